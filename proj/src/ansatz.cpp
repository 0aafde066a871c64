#include "e8jac/ansatz.hpp"

#include <algorithm>

namespace e8jac {

namespace {

class Enumerator {
public:
    Enumerator(const Alphabet& alphabet, BiDegree target) : alphabet_(alphabet), target_(target)
    {
        for (auto g : alphabet.active()) {
            const auto& d = alphabet[g].degree;
            if (d.index > 0)
                graded_.push_back(g);
            else if (d.weight > 0)
                modular_.push_back(g);
            else
                throw AlgebraError("enumeration is unbounded: index-0 generator '" + alphabet[g].symbol +
                                   "' has non-positive weight");
        }
    }

    template <typename Sink>
    void run(Sink&& sink)
    {
        if (target_.index < 0)
            return;
        Monomial m;
        graded(0, target_.index, target_.weight, m, sink);
    }

private:
    template <typename Sink>
    void graded(std::size_t pos, int index_left, int weight_left, Monomial& m, Sink& sink)
    {
        if (index_left == 0) {
            modular(0, weight_left, m, sink);
            return;
        }
        if (pos == graded_.size())
            return;
        const std::size_t g = graded_[pos];
        const auto& d = alphabet_[g].degree;
        for (int e = index_left / d.index; e >= 0; --e) {
            m.exps[g] = static_cast<std::uint16_t>(e);
            graded(pos + 1, index_left - e * d.index, weight_left - e * d.weight, m, sink);
        }
        m.exps[g] = 0;
    }

    template <typename Sink>
    void modular(std::size_t pos, int weight_left, Monomial& m, Sink& sink)
    {
        if (weight_left == 0) {
            sink(m);
            return;
        }
        if (pos == modular_.size() || weight_left < 0)
            return;
        const std::size_t g = modular_[pos];
        const int w = alphabet_[g].degree.weight;
        for (int e = weight_left / w; e >= 0; --e) {
            m.exps[g] = static_cast<std::uint16_t>(e);
            modular(pos + 1, weight_left - e * w, m, sink);
        }
        m.exps[g] = 0;
    }

    const Alphabet& alphabet_;
    BiDegree target_;
    std::vector<std::size_t> graded_;
    std::vector<std::size_t> modular_;
};

} // namespace

std::vector<Monomial> enumerate_monomials(const Alphabet& alphabet, BiDegree target)
{
    std::vector<Monomial> out;
    Enumerator(alphabet, target).run([&](const Monomial& m) { out.push_back(m); });
    std::sort(out.begin(), out.end(), MonomialOrder(alphabet.ambient()));
    return out;
}

std::size_t count_monomials(const Alphabet& alphabet, BiDegree target)
{
    std::size_t n = 0;
    Enumerator(alphabet, target).run([&](const Monomial&) { ++n; });
    return n;
}

ParamPoly build_ansatz(const AnsatzSpec& spec)
{
    auto monos = enumerate_monomials(*spec.alphabet, spec.target);
    std::vector<ParamPoly::Term> terms;
    terms.reserve(monos.size());
    for (std::size_t i = 0; i < monos.size(); ++i)
        terms.push_back({monos[i], LinearForm::unknown(spec.first_id + std::uint32_t(i))});
    return ParamPoly(*spec.alphabet, std::move(terms));
}

} // namespace e8jac
