#include "e8jac/constructor.hpp"

#include <atomic>
#include <thread>
#include <unordered_map>

namespace e8jac {

namespace {

const Poly& p165_power(int l)
{
    static std::mutex mutex;
    static std::map<int, Poly> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(l); it != cache.end())
        return it->second;
    return cache.emplace(l, pow(p165(), unsigned(l))).first->second;
}

// Terms of num * Delta^extra whose E4 exponent is below cap.
Poly lifted_pole_part(const Frac& f, int n)
{
    const unsigned cap = unsigned(f.e4_pow);
    if (f.delta_pow < n)
        return mul_truncated(f.num, delta_power(Alphabet::AB(), unsigned(n - f.delta_pow)), gen::E4, cap);
    std::vector<Poly::Term> terms;
    for (const auto& t : f.num.terms())
        if (t.mono.exps[gen::E4] < cap)
            terms.push_back(t);
    return Poly(Alphabet::AB(), std::move(terms));
}

Poly form_from_vector(const std::vector<Monomial>& monos, const IntVector& v)
{
    std::vector<Poly::Term> terms;
    for (std::size_t i = 0; i < monos.size(); ++i)
        if (sgn(v[i]) != 0)
            terms.push_back({monos[i], Rational(v[i])});
    return Poly(Alphabet::ab(), std::move(terms));
}

JacobiBasis construct(int weight, int index, bool with_certificates)
{
    if (index < 0)
        throw std::invalid_argument("index must be non-negative");
    const Alphabet& AB = Alphabet::AB();
    JacobiBasis out;
    out.target = {weight, index};
    out.sun_wang_n = sun_wang_delta_power(index);

    // Step 1: ansatz monomials; unknown c_{i+1} multiplies monos[i].
    const auto monos = enumerate_monomials(Alphabet::ab(), out.target);
    out.ansatz_size = monos.size();
    if (monos.empty())
        return out;

    // Step 2: images in AB and the Delta-clearing power.
    std::vector<const Frac*> images;
    images.reserve(monos.size());
    int n = 0;
    for (const auto& m : monos) {
        images.push_back(&ab_monomial_image(m));
        n = std::max(n, images.back()->delta_pow);
    }
    out.n = n;

    // Step 3: E4-pole parts Q_l of Delta^n P, per unknown.
    std::map<int, std::vector<ParamPoly::Term>> q_terms;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        const Frac& f = *images[i];
        if (f.e4_pow == 0)
            continue;
        const Poly lifted = lifted_pole_part(f, n);
        for (const auto& t : lifted.terms()) {
            int l = f.e4_pow - int(t.mono.exps[gen::E4]);
            Monomial m = t.mono;
            m.exps[gen::E4] = 0;
            q_terms[l].push_back({m, LinearForm::unknown(std::uint32_t(i), t.coeff)});
        }
    }
    int l1 = 0;
    std::map<int, ParamPoly> q_parts;
    for (auto& [l, terms] : q_terms) {
        ParamPoly q(AB, std::move(terms));
        if (!q.is_zero()) {
            l1 = std::max(l1, l);
            q_parts.emplace(l, std::move(q));
        }
    }
    out.l1 = l1;

    // Step 4: S_l ansatz over E6, A_i, B_j.
    std::vector<std::string> names;
    for (std::size_t i = 0; i < monos.size(); ++i)
        names.push_back("c" + std::to_string(i + 1));
    std::map<int, std::vector<Monomial>> s_monos;
    std::map<int, std::uint32_t> s_offset;
    for (int l = 1; l <= l1; ++l) {
        s_monos[l] = enumerate_monomials(Alphabet::AB_no_E4(), {weight + 12 * n - 12 * l, index - 5 * l});
        s_offset[l] = std::uint32_t(names.size());
        for (std::size_t i = 0; i < s_monos[l].size(); ++i)
            names.push_back("d" + std::to_string(l) + "_" + std::to_string(i + 1));
    }

    // Step 5: Q_l = P165^l S_l coefficientwise.
    LinearSystem system;
    system.unknowns = std::move(names);
    for (int l = 1; l <= l1; ++l) {
        ParamPoly lhs = q_parts.count(l) ? q_parts.at(l) : ParamPoly(AB);
        std::vector<ParamPoly::Term> rhs_terms;
        const Poly& pl = p165_power(l);
        for (std::size_t i = 0; i < s_monos[l].size(); ++i)
            for (const auto& t : pl.terms())
                rhs_terms.push_back({t.mono * s_monos[l][i], LinearForm::unknown(s_offset[l] + std::uint32_t(i), t.coeff)});
        append_coefficients(system, lhs, ParamPoly(AB, std::move(rhs_terms)));
    }
    out.equations = system.rows.size();
    out.unknowns = system.unknowns.size();

    const SolutionSpace joint = nullspace(system);
    std::vector<std::uint32_t> keep(monos.size());
    for (std::uint32_t i = 0; i < keep.size(); ++i)
        keep[i] = i;
    const SolutionSpace cspace = project(joint, keep);
    if (cspace.dimension() != joint.dimension())
        throw InconsistencyError("injectivity",
                                 "projection onto c drops dimension at " + to_string(out.target) + " (" +
                                     std::to_string(joint.dimension()) + " -> " +
                                     std::to_string(cspace.dimension()) + ")");

    // Step 6: substitute the solutions back.
    for (const auto& v : cspace.basis)
        out.forms.push_back(form_from_vector(monos, v));

    if (!with_certificates)
        return out;
    for (std::size_t b = 0; b < out.forms.size(); ++b) {
        auto result = certify(out.forms[b], n);
        if (auto* rej = std::get_if<Rejection>(&result))
            throw InconsistencyError("certificate soundness", "basis form " + std::to_string(b + 1) + " at " +
                                                                  to_string(out.target) + " rejected: " + rej->reason);
        auto& cert = std::get<Certificate>(result);
        // The joint solution carries S_l directly; it must agree with the
        // quotient found by division.
        const IntVector& jv = joint.basis[b];
        const IntVector& cv = cspace.basis[b];
        std::size_t lead = 0;
        while (sgn(cv[lead]) == 0)
            ++lead;
        Rational scale(cv[lead], jv[lead]);
        scale.canonicalize();
        for (const auto& [l, s] : cert.s_parts) {
            std::vector<Poly::Term> terms;
            for (std::size_t i = 0; i < s_monos[l].size(); ++i)
                terms.push_back({s_monos[l][i], Rational(jv[s_offset[l] + i]) * scale});
            if (!(Poly(AB, std::move(terms)) == s))
                throw InconsistencyError("certificate soundness",
                                         "S_" + std::to_string(l) + " from the linear system differs from the quotient");
        }
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

std::string memo_fingerprint()
{
    static const std::string fp = Alphabet::ab().fingerprint() + Alphabet::AB().fingerprint();
    return fp;
}

} // namespace

int sun_wang_delta_power(int index)
{
    static constexpr int offsets[6] = {0, 0, 1, 2, 3, 3};
    int t0 = index / 6;
    return 5 * t0 + offsets[index - 6 * t0];
}

CertifyResult certify(const Poly& form, std::optional<int> n)
{
    if (&form.alphabet() != &Alphabet::ab())
        throw AlgebraError("certify expects a polynomial over ab");
    if (!form.is_homogeneous())
        throw AlgebraError("certify expects a homogeneous polynomial");
    Certificate cert;
    if (form.is_zero())
        return cert;
    const Frac f = sub_ab_to_AB(form);
    cert.n = n.value_or(f.delta_pow);
    if (cert.n < f.delta_pow)
        throw std::invalid_argument("certify: n below the Delta power of the form");
    Poly num = cert.n > f.delta_pow ? f.num * delta_power(Alphabet::AB(), unsigned(cert.n - f.delta_pow)) : f.num;
    auto split = e4_split(Frac(std::move(num), f.e4_pow, 0));
    for (std::size_t l = 1; l <= split.q.size(); ++l) {
        const Poly& q = split.q[l - 1];
        if (q.is_zero())
            continue;
        auto s = divexact(q, p165_power(int(l)));
        if (!s)
            return Rejection{int(l), "Q_" + std::to_string(l) + " is not divisible by P165^" + std::to_string(l)};
        cert.s_parts.emplace_back(int(l), std::move(*s));
    }
    cert.remainder = std::move(split.r);
    return cert;
}

bool verify_certificate(const Poly& form, const Certificate& cert)
{
    const Frac f = sub_ab_to_AB(form);
    Frac lhs = cert.n >= f.delta_pow
                   ? Frac(cert.n > f.delta_pow ? f.num * delta_power(Alphabet::AB(), unsigned(cert.n - f.delta_pow))
                                               : f.num,
                          f.e4_pow, 0)
                   : Frac(f.num, f.e4_pow, f.delta_pow - cert.n);
    E4Split<Rational> parts{{}, cert.remainder};
    int p = 0;
    for (const auto& [l, s] : cert.s_parts) {
        if (s.degree_in(gen::E4) > 0)
            return false;
        if (int(parts.q.size()) < l)
            parts.q.resize(std::size_t(l), Poly(Alphabet::AB()));
        parts.q[std::size_t(l) - 1] = p165_power(l) * s;
        p = std::max(p, l);
    }
    if (form.is_zero())
        return cert.s_parts.empty() && cert.remainder.is_zero();
    // Zero pole parts below l1 are allowed in the join; e4_join rejects only
    // l1 > p, which cannot happen here.
    return normalize(lhs) == e4_join(parts, p);
}

long rank_series(int index)
{
    if (index < 0)
        return 0;
    static constexpr int parts[] = {1, 2, 2, 3, 3, 4, 4, 5, 6};
    std::vector<long> c(std::size_t(index) + 1, 0);
    c[0] = 1;
    for (int p : parts)
        for (int i = p; i <= index; ++i)
            c[std::size_t(i)] += c[std::size_t(i - p)];
    return c[std::size_t(index)];
}

std::string format_profile(const std::map<int, int>& coefficients)
{
    std::string s;
    for (const auto& [k, c] : coefficients) {
        if (c == 0)
            continue;
        if (!s.empty())
            s += " + ";
        std::string x = k == 0 ? "" : k == 1 ? "x" : "x^" + std::to_string(k);
        if (x.empty())
            s += std::to_string(c);
        else
            s += (c == 1 ? "" : std::to_string(c)) + x;
    }
    return s.empty() ? "0" : s;
}

IntVector ansatz_coordinates(const Poly& form, BiDegree target)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<std::unordered_map<Monomial, std::size_t, MonomialHash>>> cache;
    std::shared_ptr<std::unordered_map<Monomial, std::size_t, MonomialHash>> index;
    {
        std::lock_guard lock(mutex);
        auto& slot = cache[{target.weight, target.index}];
        if (!slot) {
            slot = std::make_shared<std::unordered_map<Monomial, std::size_t, MonomialHash>>();
            auto monos = enumerate_monomials(Alphabet::ab(), target);
            for (std::size_t i = 0; i < monos.size(); ++i)
                slot->emplace(monos[i], i);
        }
        index = slot;
    }
    std::vector<Rational> v(index->size(), 0);
    for (const auto& t : form.terms()) {
        auto it = index->find(t.mono);
        if (it == index->end())
            throw AlgebraError("ansatz_coordinates: monomial " + to_string(form.alphabet(), t.mono) +
                               " not of bidegree " + to_string(target));
        v[it->second] = t.coeff;
    }
    return primitive(v);
}

JacobiBasis jacobi_basis(int weight, int index, bool with_certificates)
{
    return construct(weight, index, with_certificates);
}

int jacobi_dim(int weight, int index)
{
    return int(construct(weight, index, false).forms.size());
}

JacobiEngine::JacobiEngine(EngineOptions options) : options_(options)
{
    if (options_.jobs == 0)
        options_.jobs = 1;
}

std::shared_ptr<const JacobiBasis> JacobiEngine::basis(int weight, int index)
{
    auto key = std::make_pair(memo_fingerprint(), std::make_pair(weight, index));
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
    }
    std::shared_ptr<const JacobiBasis> value;
    if (options_.store)
        if (auto loaded = options_.store->load({weight, index}))
            if (!options_.with_certificates || loaded->certificates.size() == loaded->forms.size())
                value = std::make_shared<const JacobiBasis>(std::move(*loaded));
    if (!value) {
        value = std::make_shared<const JacobiBasis>(construct(weight, index, options_.with_certificates));
        if (options_.store)
            options_.store->save(*value);
    }
    std::lock_guard lock(mutex_);
    return memo_.try_emplace(key, std::move(value)).first->second;
}

int JacobiEngine::dim(int weight, int index)
{
    return int(basis(weight, index)->forms.size());
}

void JacobiEngine::prefetch(const std::vector<BiDegree>& targets)
{
    if (options_.jobs <= 1 || targets.size() <= 1) {
        for (auto t : targets)
            basis(t.weight, t.index);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= targets.size())
                return;
            try {
                basis(targets[i].weight, targets[i].index);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::min<std::size_t>(options_.jobs, targets.size()); ++j)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::pair<int, int> JacobiEngine::weight_window(int index) const
{
    if (options_.window)
        return *options_.window;
    return {-5 * index, index <= 1 ? 4 : 0};
}

IndexProfile JacobiEngine::index_profile(int index)
{
    if (index < 1)
        throw std::invalid_argument("index_profile requires index >= 1");
    auto [lo, hi] = weight_window(index);
    IndexProfile profile;
    profile.index = index;
    profile.rank = int(rank_series(index));

    std::vector<BiDegree> targets;
    for (int k = lo; k <= hi; ++k) {
        if (k % 2 != 0) {
            // Every ab generator has even weight; checked, not assumed.
            if (count_monomials(Alphabet::ab(), {k, index}) != 0)
                throw InconsistencyError("odd-weight emptiness", "odd weight " + std::to_string(k) + " has monomials");
            continue;
        }
        targets.push_back({k, index});
    }
    prefetch(targets);
    for (auto t : targets)
        profile.dims[t.weight] = dim(t.weight, index);

    auto dims_at = [&](int k) {
        auto it = profile.dims.find(k);
        return it == profile.dims.end() ? 0 : it->second;
    };
    int total = 0;
    for (auto t : targets) {
        int k = t.weight;
        int d = dims_at(k) - dims_at(k - 4) - dims_at(k - 6) + dims_at(k - 10);
        if (d < 0)
            throw InconsistencyError("freeness", "negative generator count at weight " + std::to_string(k));
        if (d > 0)
            profile.generators[k] = d;
        total += d;
    }
    const auto natural = std::make_pair(-5 * index, index <= 1 ? 4 : 0);
    if (lo <= natural.first && hi >= natural.second && total != profile.rank)
        throw InconsistencyError("rank", "sum of d_{k," + std::to_string(index) + "} = " + std::to_string(total) +
                                             " but r(m) = " + std::to_string(profile.rank));
    return profile;
}

ModuleGenerators JacobiEngine::module_generators(int index)
{
    IndexProfile profile = index_profile(index);
    ModuleGenerators out;
    out.index = index;
    const Poly e4 = generator(Alphabet::ab(), "E4");
    const Poly e6 = generator(Alphabet::ab(), "E6");
    for (const auto& [k, dk] : profile.dims) {
        if (dk == 0)
            continue;
        const BiDegree target{k, index};
        RowEchelon span(count_monomials(Alphabet::ab(), target));
        for (auto [shift, factor] : {std::pair{4, &e4}, std::pair{6, &e6}}) {
            if (!profile.dims.count(k - shift))
                continue;
            for (const auto& f : basis(k - shift, index)->forms)
                span.insert(ansatz_coordinates(*factor * f, target));
        }
        std::vector<Poly> gens;
        for (const auto& f : basis(k, index)->forms)
            if (span.insert(ansatz_coordinates(f, target)))
                gens.push_back(f);
        int expected = profile.generators.count(k) ? profile.generators.at(k) : 0;
        if (int(gens.size()) != expected)
            throw InconsistencyError("generator count", "weight " + std::to_string(k) + ": complement has " +
                                                            std::to_string(gens.size()) + ", profile says " +
                                                            std::to_string(expected));
        if (!gens.empty())
            out.by_weight.emplace_back(k, std::move(gens));
    }
    return out;
}

LbReport JacobiEngine::lb_analysis(int max_index)
{
    if (max_index < 1)
        throw std::invalid_argument("lb_analysis requires max index >= 1");
    std::vector<BiDegree> targets;
    for (int m = 0; m <= max_index; ++m)
        targets.push_back({-4 * m, m});
    prefetch(targets);

    LbReport report;
    report.max_index = max_index;
    report.lb_dims[0] = dim(0, 0);
    // Generators found so far, flattened with their index.
    std::vector<std::pair<int, const Poly*>> gens;
    for (int m = 1; m <= max_index; ++m) {
        const BiDegree target{-4 * m, m};
        auto b = basis(target.weight, target.index);
        report.lb_dims[m] = int(b->forms.size());
        RowEchelon span(count_monomials(Alphabet::ab(), target));

        // All products of >= 2 earlier generators with total index m
        // (multisets, non-decreasing position in gens).
        long monomials = 0;
        std::vector<std::size_t> chosen;
        std::function<void(std::size_t, int, const Poly&)> walk = [&](std::size_t from, int left, const Poly& acc) {
            if (left == 0) {
                if (chosen.size() >= 2) {
                    ++monomials;
                    span.insert(ansatz_coordinates(acc, target));
                }
                return;
            }
            for (std::size_t g = from; g < gens.size(); ++g) {
                if (gens[g].first > left)
                    continue;
                chosen.push_back(g);
                walk(g, left - gens[g].first, acc * *gens[g].second);
                chosen.pop_back();
            }
        };
        walk(0, m, constant(Alphabet::ab(), 1));
        const int products = int(span.rank());
        report.product_span[m] = products;

        std::vector<Poly> reps;
        for (const auto& f : b->forms)
            if (span.insert(ansatz_coordinates(f, target)))
                reps.push_back(f);
        if (int(reps.size()) != report.lb_dims[m] - products)
            throw InconsistencyError("lb complement", "index " + std::to_string(m) + ": products span more than J");
        report.relation_counts[m] = monomials - products;
        report.lb_generators[m] = reps;
        for (const auto& f : report.lb_generators[m])
            gens.emplace_back(m, &f);
    }
    return report;
}

} // namespace e8jac
