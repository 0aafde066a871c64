#pragma once

#include "e8jac/ansatz.hpp"
#include "e8jac/generators.hpp"
#include "e8jac/linear_solver.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace e8jac {

// A failed internal invariant of the construction (exit code 1 in the CLI).
class InconsistencyError : public std::runtime_error {
public:
    InconsistencyError(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant))
    {
    }
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

// Delta^n * form = sum_l P165^l * S_l / E4^l + R, with every S_l free of E4.
struct Certificate {
    int n = 0;
    std::vector<std::pair<int, Poly>> s_parts; // (l, S_l), nonzero S_l only
    Poly remainder{Alphabet::AB()};

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Rejection {
    int failing_l = 0;
    std::string reason;
};

using CertifyResult = std::variant<Certificate, Rejection>;

// Membership test for a concrete element of C[E4, E6, a_i, b_j]. When n is
// given it must be at least the Delta power of the normalized image.
CertifyResult certify(const Poly& form, std::optional<int> n = std::nullopt);

// Exact check of the certificate identity against the form.
bool verify_certificate(const Poly& form, const Certificate& cert);

// Delta power N_t of the Sun-Wang normal form for index t.
int sun_wang_delta_power(int index);

struct JacobiBasis {
    BiDegree target;
    std::vector<Poly> forms; // over ab, echelonized, primitive integral
    std::vector<Certificate> certificates;

    // Provenance of the run.
    std::size_t ansatz_size = 0;
    int n = 0;  // Delta-clearing power of the parametric ansatz
    int l1 = 0; // number of E4-pole orders constrained
    int sun_wang_n = 0;
    std::size_t equations = 0;
    std::size_t unknowns = 0;
};

struct IndexProfile {
    int index = 0;
    std::map<int, int> generators; // weight -> d_{k,m}
    std::map<int, int> dims;       // weight -> dim J_{k,m}
    int rank = 0;                  // r(m)
};

struct LbReport {
    int max_index = 0;
    std::map<int, int> lb_dims;                     // m -> dim J_{-4m,m}
    std::map<int, std::vector<Poly>> lb_generators; // m -> new generators; d^lb_m is their count
    std::map<int, int> product_span;                // m -> rank of products of earlier generators
    std::map<int, long> relation_counts;            // m -> products minus their rank
};

struct ModuleGenerators {
    int index = 0;
    std::vector<std::pair<int, std::vector<Poly>>> by_weight; // ascending weight
};

// Persistent memo store for bases (the CLI provides a file-backed one).
class BasisStore {
public:
    virtual ~BasisStore() = default;
    virtual std::optional<JacobiBasis> load(BiDegree target) = 0;
    virtual void save(const JacobiBasis& basis) = 0;
};

struct EngineOptions {
    unsigned jobs = 1;
    bool with_certificates = true;
    std::optional<std::pair<int, int>> window; // weight window override
    BasisStore* store = nullptr;
};

// Runs the construction with an in-memory memo keyed by (alphabet, k, m).
class JacobiEngine {
public:
    explicit JacobiEngine(EngineOptions options = {});

    std::shared_ptr<const JacobiBasis> basis(int weight, int index);
    int dim(int weight, int index);

    // Computes bases for many targets using the worker pool; results are
    // identical to sequential evaluation.
    void prefetch(const std::vector<BiDegree>& targets);

    IndexProfile index_profile(int index);
    ModuleGenerators module_generators(int index);
    LbReport lb_analysis(int max_index);

    std::pair<int, int> weight_window(int index) const;
    const EngineOptions& options() const { return options_; }

private:
    EngineOptions options_;
    std::mutex mutex_;
    std::map<std::pair<std::string, std::pair<int, int>>, std::shared_ptr<const JacobiBasis>> memo_;
};

// One-shot construction without memoization.
JacobiBasis jacobi_basis(int weight, int index, bool with_certificates = true);
int jacobi_dim(int weight, int index);

// Coefficient of x^m in 1/((1-x)(1-x^2)^2(1-x^3)^2(1-x^4)^2(1-x^5)(1-x^6)).
long rank_series(int index);

// Laurent polynomial text such as "2x^-16 + x^-2 + 1" (descending weight is
// reversed: lowest weight first, as tabulated).
std::string format_profile(const std::map<int, int>& coefficients);

// Coefficient vector of an ab polynomial in the canonical ansatz basis of its
// bidegree.
IntVector ansatz_coordinates(const Poly& form, BiDegree target);

} // namespace e8jac
