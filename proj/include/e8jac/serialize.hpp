#pragma once

#include "e8jac/constructor.hpp"
#include "e8jac/oracle.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace e8jac {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// "num/den" in lowest terms (den = 1 included); parsing also accepts "n".
std::string rational_to_json(const Rational& q);

// {"alphabet": "ab", "terms": [{"coeff": "5/1", "exps": {"E4": 2, "b5": 1}}, ...]}
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json basis_to_json(const JacobiBasis& b);
JacobiBasis basis_from_json(const Json& j);

Json profile_to_json(const IndexProfile& p);
IndexProfile profile_from_json(const Json& j);

Json lb_to_json(const LbReport& r);
LbReport lb_from_json(const Json& j);

Json module_generators_to_json(const ModuleGenerators& g);
ModuleGenerators module_generators_from_json(const Json& j);

// Residuals are written as decimal strings in scientific notation.
Json axiom_report_to_json(const AxiomReport& r);

struct ResultDocument {
    int schema_version = kSchemaVersion;
    std::vector<std::string> command;
    Json target;
    Json result;
    double seconds = 0;

    Json to_json() const;
    static ResultDocument from_json(const Json& j);
    friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

// Hex SHA-256 of the schema version, both alphabets, every substitution
// table and the target bidegree. Any change to a transcription yields a new
// key.
std::string cache_key(BiDegree target);

// Compact cache encoding with positional exponent vectors.
Json basis_to_cache_json(const JacobiBasis& b);
JacobiBasis basis_from_cache_json(const Json& j);

// One file per (k, m), named by cache_key; written to a temporary file and
// renamed into place.
class FileBasisStore : public BasisStore {
public:
    explicit FileBasisStore(std::filesystem::path dir);

    std::optional<JacobiBasis> load(BiDegree target) override;
    void save(const JacobiBasis& basis) override;

    std::filesystem::path path_for(BiDegree target) const;

private:
    std::filesystem::path dir_;
};

} // namespace e8jac
