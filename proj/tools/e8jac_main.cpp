// Command-line front end: exact constructions, tables and numeric checks.
#include "e8jac/constructor.hpp"
#include "e8jac/generators.hpp"
#include "e8jac/oracle.hpp"
#include "e8jac/serialize.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace e8jac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::string format = "text";
    std::string cache_dir;
    unsigned jobs = 1;
    int precision = 50;
    double tol = 1e-25;
    std::string window;
    bool timing = false;
    bool no_certificates = false;
    int samples = 3;
    std::uint64_t seed = 1;
};

std::optional<std::pair<int, int>> parse_window(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw UsageError("--window expects LO:HI");
    try {
        int lo = std::stoi(text.substr(0, colon));
        int hi = std::stoi(text.substr(colon + 1));
        if (lo > hi)
            throw UsageError("--window: LO must not exceed HI");
        return std::make_pair(lo, hi);
    } catch (const std::logic_error&) {
        throw UsageError("--window expects integers LO:HI");
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A certify input is either a JSON document (a polynomial, a basis, or a
// result document holding a basis) or one polynomial expression over ab
// per non-empty line.
std::vector<Poly> forms_from_input(const std::string& text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw UsageError("certify: empty input");
    if (text[first] == '{') {
        Json j = Json::parse(text);
        if (j.contains("result"))
            j = j.at("result");
        if (j.contains("forms")) {
            std::vector<Poly> out;
            for (const auto& f : j.at("forms"))
                out.push_back(poly_from_json(f));
            return out;
        }
        return {poly_from_json(j)};
    }
    std::vector<Poly> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#')
            continue;
        out.push_back(parse_poly(Alphabet::ab(), line));
    }
    return out;
}

// The echoed command omits flags that cannot change results (cache, jobs,
// timing), so documents stay byte-identical across those settings.
std::vector<std::string> command_echo(int argc, char** argv)
{
    std::vector<std::string> out;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cache-dir" || a == "--jobs") {
            ++i;
            continue;
        }
        if (a.rfind("--cache-dir=", 0) == 0 || a.rfind("--jobs=", 0) == 0 || a == "--timing")
            continue;
        out.push_back(a);
    }
    return out;
}

class Runner {
public:
    explicit Runner(Settings s) : settings_(std::move(s))
    {
        EngineOptions opts;
        opts.jobs = settings_.jobs;
        opts.with_certificates = !settings_.no_certificates;
        opts.window = parse_window(settings_.window);
        if (!settings_.cache_dir.empty()) {
            store_ = std::make_unique<FileBasisStore>(settings_.cache_dir);
            opts.store = store_.get();
        }
        engine_ = std::make_unique<JacobiEngine>(opts);
        ctx_.precision = settings_.precision;
    }

    int dim(int k, int m)
    {
        int d = engine_->dim(k, m);
        return emit({{"weight", k}, {"index", m}}, {{"dimension", d}}, std::to_string(d) + "\n");
    }

    int basis(int k, int m)
    {
        auto b = engine_->basis(k, m);
        std::ostringstream os;
        os << "J_{" << k << "," << m << "}: dimension " << b->forms.size() << " (ansatz " << b->ansatz_size
           << " monomials, n = " << b->n << ", l1 = " << b->l1 << ", equations " << b->equations << ")\n";
        // Recorded, not enforced.
        if (b->n != b->sun_wang_n)
            os << "note: n = " << b->n << " differs from the normal-form Delta power N_" << m << " = "
               << b->sun_wang_n << "\n";
        for (std::size_t i = 0; i < b->forms.size(); ++i) {
            os << "[" << i + 1 << "] " << to_string(b->forms[i]) << "\n";
            if (i < b->certificates.size())
                os << "    certificate: " << describe(b->certificates[i]) << "\n";
        }
        return emit({{"weight", k}, {"index", m}}, basis_to_json(*b), os.str());
    }

    int profile(int m)
    {
        auto p = engine_->index_profile(m);
        return emit({{"index", m}}, profile_to_json(p), format_profile(p.generators) + "\n");
    }

    int module_gens(int m)
    {
        auto g = engine_->module_generators(m);
        std::ostringstream os;
        for (const auto& [k, forms] : g.by_weight) {
            os << "weight " << k << ": " << forms.size() << "\n";
            for (const auto& f : forms)
                os << "  " << to_string(f) << "\n";
        }
        return emit({{"index", m}}, module_generators_to_json(g), os.str());
    }

    int lb(int max_m)
    {
        auto r = engine_->lb_analysis(max_m);
        std::ostringstream os;
        os << "m   dim J_{-4m,m}   products   d_lb   relations\n";
        for (int m = 1; m <= max_m; ++m)
            os << m << "   " << r.lb_dims[m] << "   " << r.product_span[m] << "   " << r.lb_generators[m].size()
               << "   " << r.relation_counts[m] << "\n";
        return emit({{"max_index", max_m}}, lb_to_json(r), os.str());
    }

    int certify_file(const std::string& path)
    {
        auto forms = forms_from_input(read_file(path));
        Json results = Json::array();
        std::ostringstream os;
        for (std::size_t i = 0; i < forms.size(); ++i) {
            const Poly& f = forms[i];
            if (&f.alphabet() != &Alphabet::ab())
                throw UsageError("certify: form " + std::to_string(i + 1) + " is not over ab");
            auto res = certify(f);
            if (auto* c = std::get_if<Certificate>(&res)) {
                if (!verify_certificate(f, *c))
                    throw InconsistencyError("certificate soundness", "certificate of form " + std::to_string(i + 1) +
                                                                          " fails its own identity");
                results.push_back({{"accepted", true}, {"certificate", certificate_to_json(*c)}});
                os << "[" << i + 1 << "] accepted: " << describe(*c) << "\n";
            } else {
                auto& r = std::get<Rejection>(res);
                results.push_back({{"accepted", false}, {"failing_l", r.failing_l}, {"reason", r.reason}});
                os << "[" << i + 1 << "] rejected at l = " << r.failing_l << ": " << r.reason << "\n";
            }
        }
        return emit({{"file", path}}, {{"forms", results}}, os.str());
    }

    int verify(int k, int m)
    {
        auto b = engine_->basis(k, m);
        Json reports = Json::array();
        std::ostringstream os;
        bool ok = true;
        for (std::size_t i = 0; i < b->forms.size(); ++i) {
            auto r = check_axioms(b->forms[i], k, m, settings_.samples, ctx_, settings_.seed + i);
            bool pass = r.passes(settings_.tol);
            ok = ok && pass;
            Json j = axiom_report_to_json(r);
            j["passed"] = pass;
            reports.push_back(j);
            os << "[" << i + 1 << "] " << (pass ? "pass" : "FAIL") << "  quasi-periodicity "
               << r.quasi_periodicity.str(3, std::ios_base::scientific) << "  S "
               << r.modular_S.str(3, std::ios_base::scientific) << "  T "
               << r.modular_T.str(3, std::ios_base::scientific) << "  Weyl "
               << r.weyl.str(3, std::ios_base::scientific) << "  negative q-powers "
               << r.regularity.str(3, std::ios_base::scientific) << "\n";
        }
        if (b->forms.empty())
            os << "J_{" << k << "," << m << "} is zero; nothing to verify\n";
        // Sizes of the Weyl orbits the oracle relies on, derived by closure.
        Json orbits = Json::object();
        os << "orbit sizes:";
        for (int j : {1, 2, 7, 8}) {
            orbits["w" + std::to_string(j)] = weyl_orbit(j).size();
            os << " w" << j << " " << weyl_orbit(j).size();
        }
        os << "\n";
        int code = emit({{"weight", k}, {"index", m}},
                        {{"precision", settings_.precision},
                         {"tolerance", settings_.tol},
                         {"orbit_sizes", orbits},
                         {"forms", reports}},
                        os.str());
        if (!ok) {
            std::cerr << "inconsistency: numeric axiom residual above tolerance\n";
            return kExitInconsistent;
        }
        return code;
    }

    int tables(int max_m)
    {
        Json rows = Json::array();
        std::ostringstream os;
        for (int m = 1; m <= max_m; ++m) {
            auto p = engine_->index_profile(m);
            int total = 0;
            for (const auto& [k, d] : p.generators)
                total += d;
            rows.push_back(profile_to_json(p));
            os << "P^w_" << m << " = " << format_profile(p.generators) << "    (sum " << total << " = r(" << m
               << ") = " << p.rank << ")\n";
        }
        return emit({{"max_index", max_m}}, {{"profiles", rows}}, os.str());
    }

    void set_command(std::vector<std::string> cmd) { command_ = std::move(cmd); }

private:
    static std::string describe(const Certificate& c)
    {
        std::string s = "n = " + std::to_string(c.n);
        if (c.s_parts.empty())
            return s + ", all S_l = 0";
        for (const auto& [l, p] : c.s_parts)
            s += ", S_" + std::to_string(l) + " = " + to_string(p);
        return s;
    }

    int emit(Json target, Json result, const std::string& text)
    {
        double seconds =
            settings_.timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() : 0;
        if (settings_.format == "json") {
            ResultDocument doc;
            doc.command = command_;
            doc.target = std::move(target);
            doc.result = std::move(result);
            doc.seconds = seconds;
            std::cout << doc.to_json().dump(2) << "\n";
        } else {
            std::cout << text;
            if (settings_.timing)
                std::cerr << "elapsed " << seconds << " s\n";
        }
        return kExitOk;
    }

    Settings settings_;
    std::unique_ptr<FileBasisStore> store_;
    std::unique_ptr<JacobiEngine> engine_;
    EvalContext ctx_;
    std::vector<std::string> command_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace

int main(int argc, char** argv)
{
    Settings s;
    if (const char* env = std::getenv("E8JAC_CACHE_DIR"))
        s.cache_dir = env;
    if (const char* env = std::getenv("E8JAC_PRECISION"))
        s.precision = std::atoi(env);

    CLI::App app("W(E8)-invariant weak Jacobi forms: exact construction and numeric verification");
    app.set_version_flag("--version", "e8jac 0.1.0");
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cache-dir", s.cache_dir, "Content-addressed basis cache (env E8JAC_CACHE_DIR)");
    app.add_option("--jobs", s.jobs, "Parallel (k,m) tasks")->check(CLI::Range(1u, 256u));
    app.add_option("--precision", s.precision, "Decimal digits for numeric checks (env E8JAC_PRECISION)")
        ->check(CLI::Range(15, 1000));
    app.add_option("--tol", s.tol, "Relative tolerance for numeric checks")->check(CLI::PositiveNumber);
    app.add_option("--window", s.window, "Weight window LO:HI for profiles");
    app.add_flag("--timing", s.timing, "Report elapsed time");
    app.add_flag("--no-certificates", s.no_certificates, "Skip certificate construction");

    int k = 0, m = 0;
    std::string file;
    auto* c_dim = app.add_subcommand("dim", "Dimension of J_{K,M}");
    auto* c_basis = app.add_subcommand("basis", "Echelonized basis of J_{K,M} with certificates");
    for (auto* c : {c_dim, c_basis}) {
        c->add_option("K", k, "Weight")->required();
        c->add_option("M", m, "Index")->required()->check(CLI::NonNegativeNumber);
    }
    auto* c_profile = app.add_subcommand("profile", "Generator profile P^w_M");
    auto* c_gens = app.add_subcommand("module-gens", "Module generators of J_{*,M} over C[E4,E6]");
    for (auto* c : {c_profile, c_gens})
        c->add_option("M", m, "Index")->required()->check(CLI::PositiveNumber);
    auto* c_lb = app.add_subcommand("lb", "Generators of the lowest-weight subalgebra up to index MAXM");
    c_lb->add_option("MAXM", m, "Largest index")->required()->check(CLI::PositiveNumber);
    auto* c_certify = app.add_subcommand("certify", "Membership certificates for forms read from FILE");
    c_certify->add_option("FILE", file, "Polynomials over ab (one per line) or a JSON document")->required();
    auto* c_verify = app.add_subcommand("verify", "Numeric axiom checks of the basis of J_{K,M}");
    c_verify->add_option("K", k, "Weight")->required();
    c_verify->add_option("M", m, "Index")->required()->check(CLI::PositiveNumber);
    c_verify->add_option("--samples", s.samples, "Random samples per form")->check(CLI::Range(1, 100));
    c_verify->add_option("--seed", s.seed, "Sample seed");
    auto* c_tables = app.add_subcommand("tables", "P^w_m for m = 1..M");
    c_tables->add_option("--max-index", m, "Largest index")->required()->check(CLI::PositiveNumber);
    for (auto* c : app.get_subcommands({}))
        c->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Runner run(s);
        run.set_command(command_echo(argc, argv));
        if (*c_dim)
            return run.dim(k, m);
        if (*c_basis)
            return run.basis(k, m);
        if (*c_profile)
            return run.profile(m);
        if (*c_gens)
            return run.module_gens(m);
        if (*c_lb)
            return run.lb(m);
        if (*c_certify)
            return run.certify_file(file);
        if (*c_verify)
            return run.verify(k, m);
        if (*c_tables)
            return run.tables(m);
    } catch (const InconsistencyError& e) {
        std::cerr << "inconsistency [" << e.invariant() << "]: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const AlgebraError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconsistent;
    }
    return kExitUsage;
}
