#include "e8jac/e8.hpp"

#include "e8jac/special.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <set>

namespace e8jac {

const E8Data& E8Data::standard()
{
    static const E8Data data = [] {
        E8Data d;
        d.simple_roots[0] = {1, -1, -1, -1, -1, -1, -1, 1};
        d.simple_roots[1] = {2, 2, 0, 0, 0, 0, 0, 0};
        for (int j = 3; j <= 8; ++j) {
            Doubled a{};
            a[std::size_t(j - 3)] = -2;
            a[std::size_t(j - 2)] = 2;
            d.simple_roots[std::size_t(j - 1)] = a;
        }
        d.fundamental_weights = {{
            {0, 0, 0, 0, 0, 0, 0, 4},
            {1, 1, 1, 1, 1, 1, 1, 5},
            {-1, 1, 1, 1, 1, 1, 1, 7},
            {0, 0, 2, 2, 2, 2, 2, 10},
            {0, 0, 0, 2, 2, 2, 2, 8},
            {0, 0, 0, 0, 2, 2, 2, 6},
            {0, 0, 0, 0, 0, 2, 2, 4},
            {0, 0, 0, 0, 0, 0, 2, 2},
        }};
        return d;
    }();
    return data;
}

int dot4(const Doubled& a, const Doubled& b)
{
    int s = 0;
    for (std::size_t i = 0; i < 8; ++i)
        s += a[i] * b[i];
    return s;
}

Doubled reflect(const Doubled& v, int j)
{
    const Doubled& a = E8Data::standard().simple_roots.at(std::size_t(j - 1));
    int d = dot4(v, a);
    if (d % 4)
        throw std::logic_error("reflect: v . alpha is not integral");
    d /= 4;
    Doubled out = v;
    for (std::size_t i = 0; i < 8; ++i)
        out[i] -= d * a[i];
    return out;
}

const std::vector<Doubled>& weyl_orbit(int j)
{
    if (j < 1 || j > 8)
        throw std::invalid_argument("weyl_orbit: j must be 1..8");
    static std::mutex mutex;
    static std::map<int, std::vector<Doubled>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(j); it != cache.end())
        return it->second;
    std::set<Doubled> seen;
    std::vector<Doubled> order;
    std::deque<Doubled> queue{E8Data::standard().fundamental_weights[std::size_t(j - 1)]};
    seen.insert(queue.front());
    while (!queue.empty()) {
        Doubled v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (int r = 1; r <= 8; ++r) {
            Doubled w = reflect(v, r);
            if (seen.insert(w).second)
                queue.push_back(w);
        }
    }
    return cache.emplace(j, std::move(order)).first->second;
}

bool in_e8_lattice(const Doubled& v)
{
    int parity = v[0] & 1;
    int sum = 0;
    for (int x : v) {
        if ((x & 1) != parity)
            return false;
        sum += x;
    }
    return sum % 4 == 0;
}

std::vector<Doubled> e8_lattice_vectors(int max_norm)
{
    // Doubled coordinates: norm = sum V_i^2 / 4.
    const int budget = 4 * max_norm;
    int bound = 0;
    while ((bound + 1) * (bound + 1) <= budget)
        ++bound;
    std::vector<Doubled> out;
    Doubled v{};
    auto rec = [&](auto&& self, std::size_t i, int used, int parity) -> void {
        if (i == 8) {
            if (in_e8_lattice(v))
                out.push_back(v);
            return;
        }
        for (int x = -bound; x <= bound; ++x) {
            if ((x & 1) != parity || used + x * x > budget)
                continue;
            v[i] = x;
            self(self, i + 1, used + x * x, parity);
        }
    };
    rec(rec, 0, 0, 0);
    rec(rec, 0, 0, 1);
    return out;
}

Complex dot(const std::array<Complex, 8>& a, const std::array<Complex, 8>& b)
{
    Complex s;
    for (std::size_t i = 0; i < 8; ++i)
        s += a[i] * b[i];
    return s;
}

std::array<Complex, 8> to_complex(const Doubled& v)
{
    std::array<Complex, 8> out;
    for (std::size_t i = 0; i < 8; ++i)
        out[i] = Complex(Real(v[i]) / 2);
    return out;
}

namespace {

// Powers u_j^p, u_j = exp(pi i z_j), for |p| <= bound.
struct HalfPhases {
    int bound;
    std::array<std::vector<Complex>, 8> pos, neg;

    HalfPhases(const std::array<Complex, 8>& z, int bound_) : bound(bound_)
    {
        for (std::size_t j = 0; j < 8; ++j) {
            Complex u = exp(i_unit() * pi() * z[j]);
            Complex ui = Complex(1) / u;
            pos[j].assign(std::size_t(bound) + 1, Complex(1));
            neg[j].assign(std::size_t(bound) + 1, Complex(1));
            for (int p = 1; p <= bound; ++p) {
                pos[j][std::size_t(p)] = pos[j][std::size_t(p - 1)] * u;
                neg[j][std::size_t(p)] = neg[j][std::size_t(p - 1)] * ui;
            }
        }
    }

    Complex phase(const Doubled& v) const
    {
        Complex r(1);
        for (std::size_t j = 0; j < 8; ++j) {
            int p = v[j];
            if (p > 0)
                r *= pos[j][std::size_t(p)];
            else if (p < 0)
                r *= neg[j][std::size_t(-p)];
        }
        return r;
    }
};

int max_coordinate(const std::vector<Doubled>& vs)
{
    int m = 0;
    for (const auto& v : vs)
        for (int x : v)
            m = std::max(m, std::abs(x));
    return m;
}

} // namespace

Complex orbit_character(int j, const std::array<Complex, 8>& z, const EvalContext& ctx)
{
    PrecisionScope scope(ctx);
    const auto& orbit = weyl_orbit(j);
    HalfPhases phases(z, max_coordinate(orbit));
    Complex s;
    for (const auto& v : orbit)
        s += phases.phase(v);
    return s;
}

Complex theta_e8_lattice(const Sample& s, int max_norm, const EvalContext& ctx)
{
    PrecisionScope scope(ctx);
    const auto vectors = e8_lattice_vectors(max_norm);
    HalfPhases phases(s.z, max_coordinate(vectors));
    // exp(pi i tau w^2) grouped by norm.
    std::map<int, Complex> shell;
    Complex sum;
    for (const auto& v : vectors) {
        const int n4 = dot4(v, v);
        auto it = shell.find(n4);
        if (it == shell.end())
            it = shell.emplace(n4, exp(i_unit() * pi() * s.tau * Complex(Real(n4) / 4))).first;
        sum += it->second * phases.phase(v);
    }
    return sum;
}

Complex theta_e8(const Sample& s, const EvalContext& ctx)
{
    PrecisionScope scope(ctx);
    std::array<Complex, 4> prod{Complex(1), Complex(1), Complex(1), Complex(1)};
    for (std::size_t j = 0; j < 8; ++j) {
        auto t = jacobi_thetas(s.z[j], s.tau, ctx);
        for (std::size_t k = 0; k < 4; ++k)
            prod[k] *= t[k];
    }
    return Real(0.5) * (prod[0] + prod[1] + prod[2] + prod[3]);
}

} // namespace e8jac
