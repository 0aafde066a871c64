#include "e8jac/serialize.hpp"

#include "e8jac/generators.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace e8jac {

namespace {

const Alphabet& alphabet_named(const std::string& name)
{
    if (name == Alphabet::ab().name())
        return Alphabet::ab();
    if (name == Alphabet::AB().name())
        return Alphabet::AB();
    throw std::invalid_argument("unknown alphabet '" + name + "'");
}

Json int_map_to_json(const std::map<int, int>& m)
{
    Json j = Json::object();
    for (const auto& [k, v] : m)
        j[std::to_string(k)] = v;
    return j;
}

std::map<int, int> int_map_from_json(const Json& j)
{
    std::map<int, int> m;
    for (const auto& [k, v] : j.items())
        m[std::stoi(k)] = v.get<int>();
    return m;
}

Json polys_to_json(const std::vector<Poly>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps)
        a.push_back(poly_to_json(p));
    return a;
}

std::vector<Poly> polys_from_json(const Json& j)
{
    std::vector<Poly> out;
    for (const auto& p : j)
        out.push_back(poly_from_json(p));
    return out;
}

std::string sci(const Real& r) { return r.str(6, std::ios_base::scientific); }

} // namespace

std::string rational_to_json(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Json poly_to_json(const Poly& p)
{
    const Alphabet& a = p.alphabet();
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json exps = Json::object();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (t.mono.exps[i])
                exps[a[i].symbol] = t.mono.exps[i];
        terms.push_back({{"coeff", rational_to_json(t.coeff)}, {"exps", exps}});
    }
    return {{"alphabet", a.name()}, {"terms", terms}};
}

Poly poly_from_json(const Json& j)
{
    const Alphabet& a = alphabet_named(j.at("alphabet").get<std::string>());
    std::vector<Poly::Term> terms;
    for (const auto& t : j.at("terms")) {
        Monomial m;
        for (const auto& [sym, e] : t.at("exps").items())
            m.exps[a.index_of(sym)] = std::uint16_t(e.get<unsigned>());
        terms.push_back({m, parse_rational(t.at("coeff").get<std::string>())});
    }
    return Poly(a, std::move(terms));
}

Json certificate_to_json(const Certificate& c)
{
    Json parts = Json::array();
    for (const auto& [l, s] : c.s_parts)
        parts.push_back({{"l", l}, {"S", poly_to_json(s)}});
    return {{"n", c.n}, {"S", parts}, {"R", poly_to_json(c.remainder)}};
}

Certificate certificate_from_json(const Json& j)
{
    Certificate c;
    c.n = j.at("n").get<int>();
    for (const auto& p : j.at("S"))
        c.s_parts.emplace_back(p.at("l").get<int>(), poly_from_json(p.at("S")));
    c.remainder = poly_from_json(j.at("R"));
    return c;
}

Json basis_to_json(const JacobiBasis& b)
{
    Json certs = Json::array();
    for (const auto& c : b.certificates)
        certs.push_back(certificate_to_json(c));
    return {{"weight", b.target.weight},
            {"index", b.target.index},
            {"dimension", b.forms.size()},
            {"forms", polys_to_json(b.forms)},
            {"certificates", certs},
            {"ansatz_size", b.ansatz_size},
            {"n", b.n},
            {"l1", b.l1},
            {"sun_wang_n", b.sun_wang_n},
            {"equations", b.equations},
            {"unknowns", b.unknowns}};
}

JacobiBasis basis_from_json(const Json& j)
{
    JacobiBasis b;
    b.target = {j.at("weight").get<int>(), j.at("index").get<int>()};
    b.forms = polys_from_json(j.at("forms"));
    for (const auto& c : j.at("certificates"))
        b.certificates.push_back(certificate_from_json(c));
    b.ansatz_size = j.at("ansatz_size").get<std::size_t>();
    b.n = j.at("n").get<int>();
    b.l1 = j.at("l1").get<int>();
    b.sun_wang_n = j.at("sun_wang_n").get<int>();
    b.equations = j.at("equations").get<std::size_t>();
    b.unknowns = j.at("unknowns").get<std::size_t>();
    if (j.at("dimension").get<std::size_t>() != b.forms.size())
        throw std::invalid_argument("basis document: dimension does not match the forms");
    return b;
}

Json profile_to_json(const IndexProfile& p)
{
    return {{"index", p.index},
            {"profile", format_profile(p.generators)},
            {"generators", int_map_to_json(p.generators)},
            {"dims", int_map_to_json(p.dims)},
            {"rank", p.rank}};
}

IndexProfile profile_from_json(const Json& j)
{
    IndexProfile p;
    p.index = j.at("index").get<int>();
    p.generators = int_map_from_json(j.at("generators"));
    p.dims = int_map_from_json(j.at("dims"));
    p.rank = j.at("rank").get<int>();
    return p;
}

Json lb_to_json(const LbReport& r)
{
    Json gens = Json::object();
    for (const auto& [m, fs] : r.lb_generators)
        gens[std::to_string(m)] = polys_to_json(fs);
    Json rel = Json::object();
    for (const auto& [m, c] : r.relation_counts)
        rel[std::to_string(m)] = c;
    return {{"max_index", r.max_index},
            {"lb_dims", int_map_to_json(r.lb_dims)},
            {"product_span", int_map_to_json(r.product_span)},
            {"relation_counts", rel},
            {"lb_generators", gens}};
}

LbReport lb_from_json(const Json& j)
{
    LbReport r;
    r.max_index = j.at("max_index").get<int>();
    r.lb_dims = int_map_from_json(j.at("lb_dims"));
    r.product_span = int_map_from_json(j.at("product_span"));
    for (const auto& [k, v] : j.at("relation_counts").items())
        r.relation_counts[std::stoi(k)] = v.get<long>();
    for (const auto& [k, v] : j.at("lb_generators").items())
        r.lb_generators[std::stoi(k)] = polys_from_json(v);
    return r;
}

Json module_generators_to_json(const ModuleGenerators& g)
{
    Json by = Json::array();
    for (const auto& [k, fs] : g.by_weight)
        by.push_back({{"weight", k}, {"forms", polys_to_json(fs)}});
    return {{"index", g.index}, {"by_weight", by}};
}

ModuleGenerators module_generators_from_json(const Json& j)
{
    ModuleGenerators g;
    g.index = j.at("index").get<int>();
    for (const auto& w : j.at("by_weight"))
        g.by_weight.emplace_back(w.at("weight").get<int>(), polys_from_json(w.at("forms")));
    return g;
}

Json axiom_report_to_json(const AxiomReport& r)
{
    return {{"samples", r.samples},
            {"resampled", r.resampled},
            {"quasi_periodicity", sci(r.quasi_periodicity)},
            {"modular_S", sci(r.modular_S)},
            {"modular_T", sci(r.modular_T)},
            {"weyl", sci(r.weyl)},
            {"regularity", sci(r.regularity)},
            {"probe_radius", sci(r.probe_radius)}};
}

Json ResultDocument::to_json() const
{
    return {{"schema_version", schema_version},
            {"command", command},
            {"target", target},
            {"result", result},
            {"seconds", seconds}};
}

ResultDocument ResultDocument::from_json(const Json& j)
{
    ResultDocument d;
    d.schema_version = j.at("schema_version").get<int>();
    if (d.schema_version != kSchemaVersion)
        throw std::invalid_argument("unsupported schema_version " + std::to_string(d.schema_version));
    d.command = j.at("command").get<std::vector<std::string>>();
    d.target = j.at("target");
    d.result = j.at("result");
    d.seconds = j.at("seconds").get<double>();
    return d;
}

std::string cache_key(BiDegree target)
{
    std::ostringstream os;
    os << "e8jac-cache/" << kSchemaVersion << '\n'
       << Alphabet::ab().fingerprint() << '\n'
       << Alphabet::AB().fingerprint() << '\n';
    for (std::size_t g = 2; g < Alphabet::ab().size(); ++g)
        os << ab_image_source(g) << '\n';
    for (std::size_t g = 2; g < Alphabet::AB().size(); ++g)
        os << AB_image_source(g) << '\n';
    os << to_string(p165()) << '\n' << target.weight << ',' << target.index;
    const std::string text = os.str();

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

namespace {

Json poly_to_cache(const Poly& p)
{
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json e = Json::array();
        for (std::size_t i = 0; i < p.alphabet().size(); ++i)
            e.push_back(t.mono.exps[i]);
        terms.push_back({rational_to_json(t.coeff), e});
    }
    return {p.alphabet().name(), terms};
}

Poly poly_from_cache(const Json& j)
{
    const Alphabet& a = alphabet_named(j.at(0).get<std::string>());
    std::vector<Poly::Term> terms;
    for (const auto& t : j.at(1)) {
        Monomial m;
        const auto& e = t.at(1);
        if (e.size() != a.size())
            throw std::invalid_argument("cache: exponent vector length mismatch");
        for (std::size_t i = 0; i < a.size(); ++i)
            m.exps[i] = std::uint16_t(e.at(i).get<unsigned>());
        terms.push_back({m, parse_rational(t.at(0).get<std::string>())});
    }
    return Poly(a, std::move(terms));
}

} // namespace

Json basis_to_cache_json(const JacobiBasis& b)
{
    Json forms = Json::array(), certs = Json::array();
    for (const auto& f : b.forms)
        forms.push_back(poly_to_cache(f));
    for (const auto& c : b.certificates) {
        Json parts = Json::array();
        for (const auto& [l, s] : c.s_parts)
            parts.push_back({l, poly_to_cache(s)});
        certs.push_back({c.n, parts, poly_to_cache(c.remainder)});
    }
    return {{"schema_version", kSchemaVersion},
            {"key", cache_key(b.target)},
            {"target", {b.target.weight, b.target.index}},
            {"forms", forms},
            {"certificates", certs},
            {"meta", {b.ansatz_size, b.n, b.l1, b.sun_wang_n, b.equations, b.unknowns}}};
}

JacobiBasis basis_from_cache_json(const Json& j)
{
    JacobiBasis b;
    b.target = {j.at("target").at(0).get<int>(), j.at("target").at(1).get<int>()};
    if (j.at("schema_version").get<int>() != kSchemaVersion || j.at("key").get<std::string>() != cache_key(b.target))
        throw std::invalid_argument("cache entry is stale");
    for (const auto& f : j.at("forms"))
        b.forms.push_back(poly_from_cache(f));
    for (const auto& c : j.at("certificates")) {
        Certificate cert;
        cert.n = c.at(0).get<int>();
        for (const auto& p : c.at(1))
            cert.s_parts.emplace_back(p.at(0).get<int>(), poly_from_cache(p.at(1)));
        cert.remainder = poly_from_cache(c.at(2));
        b.certificates.push_back(std::move(cert));
    }
    const auto& meta = j.at("meta");
    b.ansatz_size = meta.at(0).get<std::size_t>();
    b.n = meta.at(1).get<int>();
    b.l1 = meta.at(2).get<int>();
    b.sun_wang_n = meta.at(3).get<int>();
    b.equations = meta.at(4).get<std::size_t>();
    b.unknowns = meta.at(5).get<std::size_t>();
    return b;
}

FileBasisStore::FileBasisStore(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
}

std::filesystem::path FileBasisStore::path_for(BiDegree target) const
{
    return dir_ / (cache_key(target) + ".json");
}

std::optional<JacobiBasis> FileBasisStore::load(BiDegree target)
{
    std::ifstream in(path_for(target));
    if (!in)
        return std::nullopt;
    try {
        Json j = Json::parse(in);
        JacobiBasis b = basis_from_cache_json(j);
        if (b.target != target)
            return std::nullopt;
        return b;
    } catch (const std::exception&) {
        // Unreadable or stale entries are recomputed and overwritten.
        return std::nullopt;
    }
}

void FileBasisStore::save(const JacobiBasis& basis)
{
    static std::atomic<unsigned long> counter{0};
    const auto final_path = path_for(basis.target);
    std::ostringstream tmp_name;
    tmp_name << final_path.filename().string() << ".tmp." << ::getpid() << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id())
             << '.' << counter++;
    const auto tmp = dir_ / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file " + tmp.string());
        out << basis_to_cache_json(basis).dump();
        if (!out.flush())
            throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, final_path);
}

} // namespace e8jac
