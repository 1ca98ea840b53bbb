#include "ahodge/report.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "ahodge/cohomology.hpp"
#include "ahodge/complex.hpp"
#include "ahodge/errors.hpp"
#include "ahodge/legendre.hpp"
#include "ahodge/local_models.hpp"
#include "ahodge/monodromy.hpp"
#include "ahodge/reflexive.hpp"
#include "ahodge/residue.hpp"

namespace ahodge {

std::string render_diamond(const std::vector<std::vector<long>>& h)
{
    if (h.empty()) return "";
    const int n = int(h.size()) - 1;
    std::size_t width = 1;
    for (const auto& row : h)
        for (long x : row) width = std::max(width, std::to_string(x).size());

    std::vector<std::string> lines;
    for (int s = 2 * n; s >= 0; --s) {
        std::string line;
        const int pmax = std::min(n, s), pmin = std::max(0, s - n);
        const int entries = pmax - pmin + 1;
        // half a cell of indent per missing entry keeps the rows centred
        line.assign(std::size_t(n + 1 - entries) * (width + 1) / 2, ' ');
        for (int p = pmax; p >= pmin; --p) {
            std::string cell = std::to_string(h[std::size_t(s - p)][std::size_t(p)]);
            std::string padded(width - cell.size(), ' ');
            const std::size_t left = padded.size() / 2;
            line += std::string(left, ' ') + cell + std::string(padded.size() - left, ' ');
            if (p != pmin) line.push_back(' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        lines.push_back(line);
    }
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out.push_back('\n');
        out += lines[i];
    }
    return out;
}

std::string diamond_csv(const std::vector<std::vector<long>>& h)
{
    std::ostringstream os;
    os << "q,p,h\n";
    for (std::size_t q = 0; q < h.size(); ++q)
        for (std::size_t p = 0; p < h[q].size(); ++p) os << q << ',' << p << ',' << h[q][p] << '\n';
    return os.str();
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    return out + "\"";
}

void flatten(const nlohmann::json& j, const std::string& path, std::ostringstream& os)
{
    if (j.is_object()) {
        if (j.empty()) os << csv_field(path) << ",{}\n";
        for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "/" + key, os);
    } else if (j.is_array()) {
        if (j.empty()) os << csv_field(path) << ",[]\n";
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path.empty() ? std::to_string(i) : path + "/" + std::to_string(i), os);
    } else {
        os << csv_field(path) << ',' << csv_field(j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace

std::string flatten_csv(const nlohmann::json& j)
{
    std::ostringstream os;
    os << "path,value\n";
    flatten(j, "", os);
    return os.str();
}

OutputFormat parse_format(const std::string& s)
{
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "text") return OutputFormat::Text;
    fail("ParseError", "unknown output format '" + s + "'");
}

int exit_code_for(const std::string& kind)
{
    static const std::set<std::string> structural{
        "InvalidStructure",  "UnsupportedStructure", "NotReflexive", "SimplicityFailure", "DegeneratePolytope",
        "NotAFace",          "RhoNotInterior",       "NotStrictlyConvex", "NotUnimodular", "NotRefinement",
        "NonUniqueSplit",    "NotPrimitive",         "DimensionMismatch"};
    static const std::set<std::string> parse{"ParseError"};
    if (structural.count(kind)) return 2;
    if (parse.count(kind)) return 3;
    return 4;
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"validate", "monodromy",        "simplicity", "hodge",
                                                "residue",  "legendre",         "reflexive-import",
                                                "local-model"};
    return names;
}

namespace {

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    require(bool(in), "ParseError", "cannot open input file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail("ParseError", std::string("malformed JSON in '") + path + "': " + e.what());
    }
}

IntegralAffineComplex read_complex(const std::string& path)
{
    nlohmann::json j = read_json(path);
    try {
        return complex_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        fail("ParseError", std::string("bad complex file '") + path + "': " + e.what());
    }
}

/// Above this many flags the cocycle representatives behind the residue operator take minutes.
constexpr std::size_t kResidueFlagLimit = 20000;

std::size_t flag_count(const IntegralAffineComplex& c)
{
    std::size_t total = 0;
    for (const auto& level : enumerate_flags(c)) total += level.size();
    return total;
}

void require_closed(const IntegralAffineComplex& c)
{
    ValidationReport rep = validate(c);
    if (rep.valid()) return;
    std::string msg = "input is not a closed integral affine manifold:";
    for (const auto& v : rep.violations) msg += " [" + v.kind + "] " + v.message + ";";
    fail("InvalidStructure", msg);
}

nlohmann::json integral_report(const IntegralAffineComplex& c)
{
    nlohmann::json out = nlohmann::json::array();
    for (int p = 0; p <= c.n; ++p) {
        nlohmann::json e{{"p", p}};
        try {
            e["cohomology"] = integral_cohomology(cech_complex(c, LocalSystem{SystemKind::WedgeLambdaCheck, p, c.n}))
                                  .to_json();
        } catch (const Error& err) {
            if (err.kind() != "RangeError") throw;
            e["skipped"] = err.what();
        }
        out.push_back(e);
    }
    return out;
}

/// Random (p, omega) pairs, half of them built as p ^ tau, checked against p ^ omega = 0.
nlohmann::json wedge_sample(std::size_t n, std::uint64_t seed, int cases)
{
    std::mt19937_64 rng(seed);
    auto draw = [&](long lo, long hi) { return lo + long(rng() % std::uint64_t(hi - lo + 1)); };
    int solvable = 0, consistent = 0;
    for (int c = 0; c < cases; ++c) {
        IntVector p(n);
        while (is_zero(p))
            for (auto& x : p) x = draw(-3, 3);
        const std::size_t r = std::size_t(draw(1, long(n)));
        RatVector omega(binomial(n, r));
        if (c % 2 == 0) {
            RatVector t(binomial(n, r - 1));
            for (auto& x : t) x = draw(-3, 3);
            omega = wedge_product(to_rat(p), 1, t, r - 1, n);
        } else {
            for (auto& x : omega) x = draw(-3, 3);
        }
        const WedgeDivision div = wedge_divide(p, omega, r);
        bool closed = true;
        if (r < n) {
            RatVector pw = wedge_product(to_rat(p), 1, omega, r, n);
            closed = std::all_of(pw.begin(), pw.end(), [](const Rat& x) { return x == 0; });
        }
        bool ok = div.solvable == closed;
        if (div.solvable) {
            ++solvable;
            ok = ok && wedge_product(to_rat(p), 1, div.tau, r - 1, n) == omega;
        }
        if (ok) ++consistent;
    }
    return {{"seed", seed}, {"cases", cases}, {"solvable", solvable}, {"consistent", consistent}};
}

nlohmann::json run_command(const JobSpec& spec, int& exit_code, std::string& text)
{
    const std::string& cmd = spec.command;
    if (cmd == "validate") {
        IntegralAffineComplex c = read_complex(spec.input);
        ValidationReport rep = validate(c);
        nlohmann::json j = rep.to_json();
        j["closed"] = rep.valid();
        j["valid_up_to_boundary"] = rep.valid_up_to_boundary();
        if (rep.valid_up_to_boundary()) {
            j["cells"] = c.cells.size();
            j["euler_characteristic"] = euler_characteristic(c);
            j["charts_in_sl"] = c.all_charts_in_sl();
            j["holonomy_in_sl"] = c.holonomy_in_sl();
            j["phi_strictly_convex"] = !c.phi.empty() && phi_strictly_convex(c);
        } else {
            exit_code = 2;
        }
        return j;
    }
    if (cmd == "monodromy") {
        IntegralAffineComplex c = read_complex(spec.input);
        ValidationReport rep = validate(c);
        require(rep.valid_up_to_boundary(), "InvalidStructure", "monodromy needs a complex valid up to boundary");
        nlohmann::json j = compute_monodromy(c, spec.jobs).to_json();
        j["positive"] = check_positive(c);
        j["closed"] = rep.valid();
        if (rep.valid()) j["radiance_cocycle_closed"] = radiance_cocycle_closed(c, radiance_cocycle(c));
        return j;
    }
    if (cmd == "simplicity") {
        IntegralAffineComplex c = read_complex(spec.input);
        require_closed(c);
        auto certs = check_simple(c, spec.strict_simplicity);
        nlohmann::json list = nlohmann::json::array();
        bool simple = true;
        for (const auto& cert : certs) {
            list.push_back(cert.to_json());
            simple = simple && cert.failure.empty();
        }
        return {{"simple", simple}, {"certificates", list}};
    }
    if (cmd == "hodge") {
        IntegralAffineComplex c = read_complex(spec.input);
        require_closed(c);
        HodgeOptions opt;
        opt.jobs = spec.jobs;
        opt.strict_simplicity = spec.strict_simplicity;
        opt.with_lambda = true;
        HodgeDiamond d = hodge_numbers(c, opt);
        const std::size_t flags = flag_count(c);
        if (flags > kResidueFlagLimit)
            d.warnings.push_back("residue operator skipped: " + std::to_string(flags) + " flags exceed the limit of " +
                                 std::to_string(kResidueFlagLimit));
        nlohmann::json j = d.to_json();
        std::ostringstream os;
        os << render_diamond(d.h) << "\n\nmodel: " << d.model << '\n';
        if (flags <= kResidueFlagLimit) {
            HodgeModel model = build_hodge_model(c, spec.jobs);
            ResidueOperator res = residue_operator(c, model);
            j["residue"] = res.to_json();
            os << "residue nilpotency: " << res.nilpotency << '\n';
        } else {
            j["residue"] = nullptr;
        }
        if (spec.integral) j["integral"] = integral_report(c);
        for (const auto& w : d.warnings) os << "warning: " << w << '\n';
        text = os.str();
        if (spec.format == OutputFormat::Csv) text = diamond_csv(d.h);
        return j;
    }
    if (cmd == "residue") {
        IntegralAffineComplex c = read_complex(spec.input);
        require_closed(c);
        require(flag_count(c) <= kResidueFlagLimit, "RangeError", "complex too large for the residue operator");
        HodgeModel model = build_hodge_model(c, spec.jobs);
        nlohmann::json j;
        j["residue"] = residue_operator(c, model).to_json();
        j["moduli_connection"] = moduli_connection(c, model).to_json();
        nlohmann::json les = nlohmann::json::array();
        bool exact = true;
        for (int r = 1; r <= c.n + 1; ++r) {
            LongExactSequenceCheck chk = aff_long_exact_sequence(c, model, r);
            exact = exact && chk.exact;
            les.push_back(chk.to_json());
        }
        j["long_exact_sequence"] = les;
        j["long_exact_sequence_exact"] = exact;
        return j;
    }
    if (cmd == "legendre") {
        IntegralAffineComplex c = read_complex(spec.input);
        require_closed(c);
        IntegralAffineComplex dual = legendre_transform(c);
        nlohmann::json j = complex_to_json(dual);
        return j;
    }
    if (cmd == "reflexive-import") {
        LatticePolytope xi = reflexive_input_from_json(read_json(spec.input));
        if (spec.dual) xi = polar_dual(xi);
        return complex_to_json(from_reflexive_polytope(xi));
    }
    if (cmd == "local-model") {
        LocalModelRequest req = local_model_request_from_json(read_json(spec.input));
        if (spec.k) {
            require(*spec.k >= 0, "ParseError", "--k must be nonnegative");
            req.k = *spec.k;
        }
        nlohmann::json j = local_model_report(req, spec.jobs);
        const std::size_t n = req.tau.ambient_dim() + req.deltas.size() + 1;
        j["wedge_division_sample"] = wedge_sample(n, spec.seed, 100);
        return j;
    }
    fail("ParseError", "unknown command '" + cmd + "'");
}

}  // namespace

JobResult run_job(const JobSpec& spec)
{
    JobResult out;
    std::string text;
    try {
        out.report = run_command(spec, out.exit_code, text);
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        out.exit_code = exit_code_for(e.kind());
        out.report = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        text.clear();
    } catch (const nlohmann::json::exception& e) {
        spdlog::error("{}", e.what());
        out.exit_code = 3;
        out.report = {{"error", {{"kind", "ParseError"}, {"message", e.what()}}}};
        text.clear();
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        out.exit_code = 4;
        out.report = {{"error", {{"kind", "InternalError"}, {"message", e.what()}}}};
        text.clear();
    }
    switch (spec.format) {
    case OutputFormat::Json:
        out.rendered = out.report.dump(2) + "\n";
        break;
    case OutputFormat::Csv:
        out.rendered = text.empty() ? flatten_csv(out.report) : text;
        break;
    case OutputFormat::Text:
        out.rendered = text.empty() ? out.report.dump(2) + "\n" : text;
        break;
    }
    return out;
}

}  // namespace ahodge
