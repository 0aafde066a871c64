#include "e8jac/generators.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace e8jac {

namespace {

struct ImageSource {
    std::string_view numerator;
    int e4_pow;
    int delta_pow;
};

// a_i, b_j in terms of E4, E6, A_i, B_j: numerator / (E4^p Delta^q).
// Indexed by ab position; E4 and E6 map to themselves.
constexpr std::array<ImageSource, 11> kAbImages = {{
    {"E4", 0, 0},
    {"E6", 0, 0},
    // a2
    {"6*(-E4*A2 + A1^2)", 1, 1},
    // a3
    {"(-7*E4^2*E6*A3 - 20*E4^3*B3 - 9*E4*E6*A1*A2 + 30*E4^2*A1*B2 + 6*E6*A1^3)/9", 2, 2},
    // a4
    {"((E4^6 - E4^3*E6^2)*A4 + (56*E4^5 - 56*E4^2*E6^2)*A1*A3 - 27*E4^5*A2^2"
     " - 90*E4^3*E6*A2*B2 - 75*E4^4*B2^2 + (180*E4^4 - 36*E4*E6^2)*A1^2*A2"
     " + 240*E4^2*E6*A1^2*B2 + (-210*E4^3 + 18*E6^2)*A1^4)/864",
     3, 3},
    // b1
    {"-4*A1", 1, 0},
    // b2
    {"5*(E4^2*B2 - E6*A1^2)/6", 2, 1},
    // b3
    {"(-7*E4^5*A3 - 20*E4^3*E6*B3 - 9*E4^4*A1*A2 + 30*E4^2*E6*A1*B2 + (16*E4^3 - 10*E6^2)*A1^3)/108", 3, 2},
    // b4
    {"((-5*E4^7 + 5*E4^4*E6^2)*B4 + (80*E4^6 - 80*E4^3*E6^2)*A1*B3 + 9*E4^5*E6*A2^2 + 30*E4^6*A2*B2"
     " + 25*E4^4*E6*B2^2 - 48*E4^4*E6*A1^2*A2 + (-140*E4^5 + 60*E4^2*E6^2)*A1^2*B2"
     " + (74*E4^3*E6 - 10*E6^3)*A1^4)/1728",
     4, 3},
    // b5
    {"((-21*E4^7 + 21*E4^4*E6^2)*A5 - 294*E4^6*A2*A3 - 770*E4^4*E6*B2*A3 - 840*E4^4*E6*A2*B3"
     " - 2200*E4^5*B2*B3 + 168*E4^5*A1^2*A3 + 480*E4^3*E6*A1^2*B3 - 621*E4^5*A1*A2^2"
     " + 3525*E4^4*A1*B2^2 + 1224*E4^4*A1^3*A2 - 240*E4^2*E6*A1^3*B2 + (-456*E4^3 + 24*E6^2)*A1^5)/72",
     5, 3},
    // b6
    {"((-20*E4^12 + 40*E4^9*E6^2 - 20*E4^6*E6^4)*B6"
     " + (-189*E4^10*E6 + 378*E4^7*E6^3 - 189*E4^4*E6^5)*A1*A5"
     " + (-9*E4^10*E6 + 9*E4^7*E6^3)*A2*A4"
     " + (-15*E4^11 + 15*E4^8*E6^2)*B2*A4"
     " + (-180*E4^11 + 180*E4^8*E6^2)*A2*B4"
     " + (-300*E4^9*E6 + 300*E4^6*E6^3)*B2*B4"
     " + (22*E4^9*E6 - 22*E4^6*E6^3)*A1^2*A4"
     " + (150*E4^10 + 120*E4^7*E6^2 - 270*E4^4*E6^4)*A1^2*B4"
     " + (196*E4^10*E6 - 196*E4^7*E6^3)*A3^2"
     " + (1120*E4^11 - 1120*E4^8*E6^2)*A3*B3"
     " + (1600*E4^9*E6 - 1600*E4^6*E6^3)*B3^2"
     " + (-2982*E4^9*E6 + 2982*E4^6*E6^3)*A1*A2*A3"
     " + (-2520*E4^10 - 4410*E4^7*E6^2 + 6930*E4^4*E6^4)*A1*B2*A3"
     " + (3360*E4^10 - 10920*E4^7*E6^2 + 7560*E4^4*E6^4)*A1*A2*B3"
     " + (-19800*E4^8*E6 + 19800*E4^5*E6^3)*A1*B2*B3"
     " + (2016*E4^8*E6 - 2016*E4^5*E6^3)*A1^3*A3"
     " + (-5920*E4^9 + 7360*E4^6*E6^2 - 1440*E4^3*E6^4)*A1^3*B3"
     " + (405*E4^9*E6 + 162*E4^6*E6^3)*A2^3"
     " + (1215*E4^10 + 1620*E4^7*E6^2)*A2^2*B2"
     " + 4725*E4^8*E6*A2*B2^2"
     " + (1125*E4^9 + 1500*E4^6*E6^2)*B2^3"
     " + (-9477*E4^8*E6 + 5103*E4^5*E6^3)*A1^2*A2^2"
     " + (-9180*E4^9 - 5400*E4^6*E6^2)*A1^2*A2*B2"
     " + (20925*E4^7*E6 - 33075*E4^4*E6^3)*A1^2*B2^2"
     " + (20304*E4^7*E6 - 9072*E4^4*E6^3)*A1^4*A2"
     " + (12780*E4^8 + 5400*E4^5*E6^2 + 540*E4^2*E6^4)*A1^4*B2"
     " + (-11076*E4^6*E6 + 1512*E4^3*E6^3 - 36*E6^5)*A1^6)/13436928",
     6, 5},
}};

// A_i, B_j in terms of E4, E6, a_i, b_j, with Delta = (E4^3 - E6^2)/1728.
constexpr std::array<std::string_view, 11> kABImages = {{
    "E4",
    "E6",
    // A1
    "-E4*b1/4",
    // A2
    "(3*E4*b1^2 - 8*Delta*a2)/48",
    // A3
    "(-21*E4*b1^3 - 12*Delta*E4*b3 + Delta*E6*a3 - 72*Delta*a2*b1)/1344",
    // A4
    "(Delta*E4^2*a2^2 + 9*E4*b1^4 - 288*Delta*E4*b1*b3 + 144*Delta*E4*b2^2 - 24*Delta*E6*a2*b2"
    " + 24*Delta*E6*a3*b1 + 1296*Delta*a2*b1^2 + 1152*Delta^2*a4)/2304",
    // A5
    "(3*Delta*E4^2*a2^2*b1 - 63*E4*b1^5 + 216*Delta*E4*b1^2*b3 - 144*Delta*E4*b1*b2^2"
    " - 24*Delta*E6*a2*b1*b2 + 110*Delta*E6*a3*b1^2 - 1200*Delta*a2*b1^3 - 128*Delta^2*E4*b5"
    " - 1344*Delta^2*a2*b3 + 2112*Delta^2*a3*b2)/64512",
    // B2
    "(5*E6*b1^2 + 96*Delta*b2)/80",
    // B3
    "(-Delta*E4^2*a3 - 60*E6*b1^3 + 12*Delta*E6*b3 - 1728*Delta*b1*b2)/3840",
    // B4
    "(-24*Delta*E4^2*a2*b2 + 36*Delta*E4^2*a3*b1 + Delta*E4*E6*a2^2 + 135*E6*b1^4 - 432*Delta*E6*b1*b3"
    " + 144*Delta*E6*b2^2 + 5184*Delta*b1^2*b2 - 6912*Delta^2*b4)/34560",
    // B6
    "(-Delta*E4^2*E6*a4*b1^2 + 72*Delta*E4^2*a2*b1^2*b2 - 216*Delta*E4^2*a3*b1^3"
    " - 9*Delta*E4*E6*a2^2*b1^2 + 135*E6*b1^6 - 96*Delta^2*E4^2*a2*b4 + 72*Delta^2*E4^2*a3*b3"
    " - 144*Delta^2*E4^2*a4*b2 + 12*Delta^2*E4*E6*a2*a4 - 3*Delta^2*E4*E6*a3^2"
    " - 144*Delta^2*E4*a2^2*b2 + 288*Delta^2*E4*a2*a3*b1 + 12*Delta^2*E6*a2^3"
    " + 12*Delta*E6^2*b1^2*b4 - 216*Delta*E6*b1^3*b3 + 7776*Delta*b1^4*b2 - 2592*Delta^2*E6*b1*b5"
    " + 1152*Delta^2*E6*b2*b4 - 432*Delta^2*E6*b3^2 + 10368*Delta^2*b1^2*b4 - 124416*Delta^3*b6)/552960",
}};

constexpr std::string_view kP165 =
    "864*A1^3*A2 + 3825*A1*B2^2 - 770*E6*A3*B2 - 840*E6*A2*B3 + 60*E6*A1*B4 + 21*E6^2*A5";

constexpr std::string_view kP12c5InAb =
    "(24*Delta*E4^2*E6*a2*b1*b2 - 18*Delta*E4^2*E6*a3*b1^2 + 20736*Delta*E4^2*a2*b1^3"
    " + 5*Delta*E4*E6^2*a2^2*b1 - 28440*E6^2*b1^5 - 336*Delta^2*E4*E6*a2*a3"
    " + 4824*Delta*E6^2*b1^2*b3 - 1008*Delta*E6^2*b1*b2^2 - 991872*Delta*E6*b1^3*b2"
    " - 13436928*Delta*b1^5 - 384*Delta^2*E6^2*b5 + 27648*Delta^2*E6*b1*b4"
    " + 76032*Delta^2*E6*b2*b3 - 12690432*Delta^2*b1*b2^2)/9216";

std::map<std::string, Poly, std::less<>> delta_atom(const Alphabet& alphabet)
{
    std::map<std::string, Poly, std::less<>> named;
    named.emplace("Delta", delta_polynomial(alphabet));
    return named;
}

class ImageCache {
public:
    const Frac& get(const Monomial& m)
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = cache_.find(m); it != cache_.end())
                return it->second;
        }
        Frac value = compute(m);
        std::unique_lock lock(mutex_);
        // First writer wins; images are canonical so any copy is identical.
        return cache_.try_emplace(m, std::move(value)).first->second;
    }

    void clear()
    {
        std::unique_lock lock(mutex_);
        cache_.clear();
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return cache_.size();
    }

private:
    Frac compute(const Monomial& m)
    {
        const Alphabet& AB = Alphabet::AB();
        if (m == Monomial::unit())
            return Frac(constant(AB, 1));
        // Peel one factor of the highest-index generator present.
        std::size_t g = kMaxGenerators;
        for (std::size_t i = Alphabet::ab().size(); i-- > 0;)
            if (m.exps[i] > 0) {
                g = i;
                break;
            }
        Monomial rest = m;
        --rest.exps[g];
        if (rest == Monomial::unit())
            return ab_generator_image(g);
        const Frac& head = get(rest);
        return head * ab_generator_image(g);
    }

    mutable std::shared_mutex mutex_;
    // Node-based map: references stay valid across inserts.
    std::unordered_map<Monomial, Frac, MonomialHash> cache_;
};

ImageCache& image_cache()
{
    static ImageCache cache;
    return cache;
}

} // namespace

const Poly& p165()
{
    static const Poly p = parse_poly(Alphabet::AB(), kP165);
    return p;
}

const Poly& p12c5_ab()
{
    static const Poly p = parse_poly(Alphabet::ab(), kP12c5InAb, delta_atom(Alphabet::ab()));
    return p;
}

const Frac& ab_generator_image(std::size_t g)
{
    static const std::vector<Frac> images = [] {
        std::vector<Frac> v;
        for (const auto& src : kAbImages)
            v.push_back(normalize(Frac(parse_poly(Alphabet::AB(), src.numerator), src.e4_pow, src.delta_pow)));
        return v;
    }();
    return images.at(g);
}

const Poly& AB_generator_image(std::size_t g)
{
    static const std::vector<Poly> images = [] {
        std::vector<Poly> v;
        auto named = delta_atom(Alphabet::ab());
        for (auto src : kABImages)
            v.push_back(parse_poly(Alphabet::ab(), src, named));
        return v;
    }();
    return images.at(g);
}

std::string_view ab_image_source(std::size_t g)
{
    return kAbImages.at(g).numerator;
}

std::string_view AB_image_source(std::size_t g)
{
    return kABImages.at(g);
}

const Frac& ab_monomial_image(const Monomial& m)
{
    return image_cache().get(m);
}

void clear_image_cache()
{
    image_cache().clear();
}

std::size_t image_cache_size()
{
    return image_cache().size();
}

Frac sub_ab_to_AB(const Poly& p)
{
    if (&p.alphabet() != &Alphabet::ab())
        throw AlgebraError("sub_ab_to_AB expects a polynomial over ab");
    if (!p.is_homogeneous())
        throw AlgebraError("sub_ab_to_AB expects a homogeneous polynomial");
    int e4 = 0, delta = 0;
    std::vector<const Frac*> images;
    images.reserve(p.size());
    for (const auto& t : p.terms()) {
        images.push_back(&ab_monomial_image(t.mono));
        e4 = std::max(e4, images.back()->e4_pow);
        delta = std::max(delta, images.back()->delta_pow);
    }
    std::vector<Poly::Term> acc;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Poly lifted = lift_numerator(*images[i], e4, delta);
        for (const auto& t : lifted.terms())
            acc.push_back({t.mono, t.coeff * p.terms()[i].coeff});
    }
    return normalize(Frac(Poly(Alphabet::AB(), std::move(acc)), e4, delta));
}

ParamFrac sub_ab_to_AB(const ParamPoly& p)
{
    if (&p.alphabet() != &Alphabet::ab())
        throw AlgebraError("sub_ab_to_AB expects a polynomial over ab");
    // Per unknown: normalize each concrete part, then recombine over the
    // largest denominators.
    std::uint32_t count = 0;
    for (const auto& t : p.terms())
        for (const auto& e : t.coeff.entries())
            count = std::max(count, e.first + 1);
    std::vector<Frac> parts;
    int e4 = 0, delta = 0;
    for (auto& part : split_by_unknown(p, count)) {
        parts.push_back(sub_ab_to_AB(part));
        if (!parts.back().num.is_zero()) {
            e4 = std::max(e4, parts.back().e4_pow);
            delta = std::max(delta, parts.back().delta_pow);
        }
    }
    std::vector<ParamPoly::Term> acc;
    for (std::uint32_t id = 0; id < count; ++id) {
        if (parts[id].num.is_zero())
            continue;
        const Poly lifted = lift_numerator(parts[id], e4, delta);
        for (const auto& t : lifted.terms())
            acc.push_back({t.mono, LinearForm::unknown(id, t.coeff)});
    }
    return ParamFrac(ParamPoly(Alphabet::AB(), std::move(acc)), e4, delta);
}

Poly sub_AB_to_ab(const Poly& p)
{
    if (&p.alphabet() != &Alphabet::AB())
        throw AlgebraError("sub_AB_to_ab expects a polynomial over AB");
    const Alphabet& ab = Alphabet::ab();
    Poly result(ab);
    for (const auto& t : p.terms()) {
        Poly term = constant(ab, t.coeff);
        for (std::size_t g = 0; g < Alphabet::AB().size(); ++g)
            if (t.mono.exps[g] > 0)
                term = term * pow(AB_generator_image(g), t.mono.exps[g]);
        result = Poly::sum_unchecked(result, term);
    }
    return result;
}

} // namespace e8jac
