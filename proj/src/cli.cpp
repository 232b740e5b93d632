#include "qseries/cli.hpp"

#include "qseries/integrals.hpp"
#include "qseries/products.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qseries {

using Json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

long parse_long(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::ParseError, "bad integer for " + what + ": '" + s + "'");
}

const char* command_name(Command c)
{
    switch (c) {
    case Command::List: return "list";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
    case Command::Report: return "report";
    }
    return "list";
}

} // namespace

ParamMap parse_params(const std::string& text)
{
    ParamMap out;
    if (text.empty())
        return out;
    for (const auto& item : split(text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            fail(ErrorKind::ParseError, "parameter '" + item + "' is not key=value");
        std::string key = item.substr(0, eq);
        if (out.count(key))
            fail(ErrorKind::ParseError, "parameter '" + key + "' given twice");
        out[key] = parse_gauss(item.substr(eq + 1));
    }
    return out;
}

std::pair<long, long> parse_n_range(const std::string& text)
{
    auto dots = text.find("..");
    if (dots == std::string::npos)
        fail(ErrorKind::ParseError, "n range must look like a..b, got '" + text + "'");
    long lo = parse_long(text.substr(0, dots), "n range");
    long hi = parse_long(text.substr(dots + 2), "n range");
    if (lo < 0 || lo > hi)
        fail(ErrorKind::ParseError, "n range needs 0 <= a <= b, got '" + text + "'");
    return {lo, hi};
}

RunConfig parse_config(const std::vector<std::string>& args)
{
    CLI::App app{"Exact and certified verification of basic hypergeometric identities", "qseries"};
    app.require_subcommand(1);

    std::string id, params, n_range, mode, sigma, f, format, output, input;
    long n = 0, precision = default_precision, trials = 10;
    double eps = 0;
    std::uint64_t seed = 0;

    app.add_subcommand("list", "print every identity id with its anchor");
    CLI::App* verify = app.add_subcommand("verify", "check one identity at one parameter point");
    CLI::App* sweep = app.add_subcommand("sweep", "check one identity at deterministic sampled points");
    CLI::App* report = app.add_subcommand("report", "re-render a stored JSON report");

    struct Opts {
        CLI::Option *params, *n, *n_range, *mode, *prec, *eps, *seed, *trials, *sigma, *f;
    };
    std::map<CLI::App*, Opts> opts;
    for (CLI::App* sub : {verify, sweep}) {
        sub->add_option("identity_id", id, "identity id, see `list`")->required();
        Opts o;
        o.params = sub->add_option("--params", params, "k=v,... with exact literals such as 1/3 or 1/2+1/5*i");
        o.n = sub->add_option("--n", n, "degree n");
        o.n_range = sub->add_option("--n-range", n_range, "degrees a..b");
        o.mode = sub->add_option("--mode", mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
        o.prec = sub->add_option("--precision-bits", precision, "working precision in bits (>= 64)");
        o.eps = sub->add_option("--eps", eps, "tolerance in approx mode");
        o.seed = sub->add_option("--seed", seed, "sampler seed");
        o.trials = sub->add_option("--trials", trials, "number of sampled points");
        o.sigma = sub->add_option("--sigma", sigma, "contour radius for integral representations");
        o.f = sub->add_option("--f", f, "free theta parameter for integral representations");
        sub->add_option("--output", output, "write the report here instead of stdout");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        opts[sub] = o;
    }
    report->add_option("input", input, "JSON report file")->required();
    report->add_option("--output", output, "write here instead of stdout");
    report->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        throw HelpRequested{out.str()};
    } catch (const CLI::ParseError& e) {
        fail(ErrorKind::ParseError, e.what());
    }

    RunConfig cfg;
    cfg.output_path = output;
    CLI::App* used = app.get_subcommands().front();
    const std::string name = used->get_name();
    if (name == "list") {
        cfg.command = Command::List;
        return cfg;
    }
    if (name == "report") {
        cfg.command = Command::Report;
        cfg.input_path = input;
        cfg.format = format.empty() ? "csv" : format;
        return cfg;
    }
    cfg.command = name == "verify" ? Command::Verify : Command::Sweep;
    const Opts& o = opts.at(used);
    cfg.identity_id = id;
    cfg.params = parse_params(params);
    if (o.n->count() && o.n_range->count())
        fail(ErrorKind::ParseError, "--n and --n-range are exclusive");
    if (o.n->count()) {
        if (n < 0)
            fail(ErrorKind::ParseError, "--n must be >= 0");
        cfg.n = n;
    }
    if (o.n_range->count())
        cfg.n_range = parse_n_range(n_range);
    if (o.mode->count())
        cfg.mode = mode;
    if (precision < 64)
        fail(ErrorKind::ParseError, "--precision-bits must be >= 64");
    cfg.precision_bits = precision;
    if (o.eps->count()) {
        if (!(eps > 0))
            fail(ErrorKind::ParseError, "--eps must be > 0");
        cfg.eps = eps;
    }
    cfg.seed = seed;
    if (trials < 1)
        fail(ErrorKind::ParseError, "--trials must be >= 1");
    cfg.trials = trials;
    if (o.sigma->count())
        cfg.sigma = parse_gauss(sigma);
    if (o.f->count())
        cfg.f = parse_gauss(f);
    cfg.format = format.empty() ? "json" : format;
    return cfg;
}

namespace {

enum class Family { Terminating, Product, Integral };

struct Target {
    Family family;
    std::string id;
    const IdentityRecord* record = nullptr;
    ProductID product{};
    IntegralID integral{};
    std::vector<std::string> params;
};

Target resolve(const std::string& id)
{
    Target t;
    t.id = id;
    if (has_identity(id)) {
        t.family = Family::Terminating;
        t.record = &lookup(id);
        t.params = t.record->params;
    } else if (auto p = product_from_name(id)) {
        t.family = Family::Product;
        t.product = *p;
        t.params = product_info(*p).params;
    } else if (auto i = integral_from_name(id)) {
        t.family = Family::Integral;
        t.integral = *i;
        t.params = integral_info(*i).params;
    } else {
        fail(ErrorKind::UnknownIdentity, "no identity named '" + id + "'; run `list`");
    }
    return t;
}

bool product_has_exact(ProductID id)
{
    return product_info(id).series_sides || id == ProductID::CAYLEY_ORR_A || id == ProductID::CAYLEY_ORR_B ||
           id == ProductID::AWGF;
}

// Resolved mode and tolerance; exact mode reports eps 0.
struct Resolved {
    std::string mode;
    double eps = 0;
};

Resolved resolve_mode(const Target& t, const RunConfig& cfg)
{
    bool exact_ok = false, exact_default = false;
    double approx_eps = 1e-30;
    switch (t.family) {
    case Family::Terminating:
        exact_ok = exact_default = !t.record->approx_only;
        break;
    case Family::Product:
        exact_ok = product_has_exact(t.product);
        break;
    case Family::Integral:
        approx_eps = 1e-25;
        break;
    }
    Resolved r;
    r.mode = cfg.mode.value_or(exact_default ? "exact" : "approx");
    if (r.mode == "exact" && !exact_ok)
        fail(ErrorKind::ModeMismatch, t.id + " is approx-only; use --mode approx");
    if (r.mode == "approx")
        r.eps = cfg.eps.value_or(approx_eps);
    return r;
}

void check_param_names(const Target& t, const ParamMap& m)
{
    for (const auto& name : t.params)
        if (!m.count(name))
            fail(ErrorKind::DomainError, t.id + " needs parameter '" + name + "'");
    for (const auto& [name, v] : m)
        if (std::find(t.params.begin(), t.params.end(), name) == t.params.end())
            fail(ErrorKind::DomainError, "unknown parameter '" + name + "' for " + t.id);
}

std::pair<long, long> degrees(const Target& t, const RunConfig& cfg)
{
    if (cfg.n)
        return {*cfg.n, *cfg.n};
    if (cfg.n_range)
        return *cfg.n_range;
    if (cfg.command == Command::Verify)
        fail(ErrorKind::ParseError, "verify " + t.id + " needs --n or --n-range");
    return {t.record->n_min, std::max(t.record->n_min, 8L)};
}

VerificationReport product_exact(const Target& t, const ParamMap& m, long order)
{
    VerificationReport rep;
    if (t.product == ProductID::AWGF) {
        auto g = [&](const char* k) { return m.at(k); };
        rep = awgf_coefficient_check(g("a"), g("b"), g("c"), g("d"), g("w"), g("q"), order);
        ParamList pl;
        for (const auto& name : t.params)
            pl.emplace_back(name, to_string(m.at(name)));
        rep.params = pl;
    } else {
        rep = product_coefficient_check(t.product, m, order);
    }
    rep.identity_id = t.id;
    rep.mode = "exact";
    return rep;
}

std::vector<VerificationReport> run_terminating(const Target& t, const RunConfig& cfg, const Resolved& r)
{
    VerifyOptions vo;
    vo.prec = cfg.precision_bits;
    vo.approx = r.mode == "approx";
    if (vo.approx)
        vo.eps = r.eps;
    auto [lo, hi] = degrees(t, cfg);
    if (cfg.command == Command::Sweep)
        return sweep(t.id, cfg.trials, cfg.seed, lo, hi, vo);
    if (cfg.params.empty())
        return sweep(t.id, 1, cfg.seed, lo, hi, vo);
    check_param_names(t, cfg.params);
    std::vector<VerificationReport> out;
    for (long n = lo; n <= hi; ++n)
        out.push_back(verify(t.id, cfg.params, n, vo));
    return out;
}

std::vector<VerificationReport> run_product(const Target& t, const RunConfig& cfg, const Resolved& r)
{
    ProductOptions po;
    po.prec = cfg.precision_bits;
    if (r.mode == "approx")
        po.eps = r.eps;
    const long order = cfg.n.value_or(po.coefficient_order);
    std::vector<ParamMap> points;
    if (cfg.command == Command::Sweep || cfg.params.empty())
        points = product_sample_points(t.product, cfg.command == Command::Sweep ? cfg.trials : 1, cfg.seed, po);
    else {
        check_param_names(t, cfg.params);
        points.push_back(cfg.params);
    }
    std::vector<VerificationReport> out;
    for (const auto& m : points) {
        auto rep = r.mode == "exact" ? product_exact(t, m, order) : verify_product(t.product, m, po);
        rep.identity_id = t.id;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<VerificationReport> run_integral(const Target& t, const RunConfig& cfg, const Resolved& r)
{
    IntegralOptions io;
    io.prec = cfg.precision_bits;
    io.eps = r.eps;
    std::vector<ParamMap> points;
    if (cfg.command == Command::Sweep || cfg.params.empty())
        points = integral_sample_points(t.integral, cfg.command == Command::Sweep ? cfg.trials : 1, cfg.seed, io);
    else
        points.push_back(cfg.params);
    std::vector<VerificationReport> out;
    for (auto m : points) {
        if (cfg.sigma)
            m["sigma"] = *cfg.sigma;
        if (cfg.f)
            m["f"] = *cfg.f;
        if (!m.count("sigma") && !m.count("f")) {
            ParamMap probe = m;
            probe["f"] = Gauss(3, 2);
            probe["sigma"] = Gauss(0);
            auto [lo, hi] = admissible_sigma(t.integral, probe);
            fail(ErrorKind::DomainError, t.id + " needs sigma and f; admissible sigma lies in (" +
                                             std::to_string(lo) + ", " + std::to_string(hi) + ")");
        }
        check_param_names(t, m);
        auto rep = verify_integral_rep(t.integral, m, io);
        rep.identity_id = t.id;
        out.push_back(std::move(rep));
    }
    return out;
}

Json params_json(const ParamList& pl)
{
    Json o = Json::object();
    for (const auto& [k, v] : pl)
        o[k] = v;
    return o;
}

Json report_json(const VerificationReport& r)
{
    Json e;
    e["identity_id"] = r.identity_id;
    e["n"] = r.n ? Json(*r.n) : Json(nullptr);
    e["params"] = params_json(r.params);
    e["mode"] = r.mode;
    e["lhs"] = r.lhs;
    e["rhs"] = r.rhs;
    e["abs_err"] = r.abs_err;
    e["rel_err"] = r.rel_err;
    e["pass"] = r.pass;
    e["degenerate"] = r.degenerate;
    e["truncation_terms"] = r.truncation_terms;
    e["quadrature_nodes"] = r.quadrature_nodes;
    e["note"] = r.note;
    return e;
}

Json config_json(const RunConfig& cfg, const Resolved& r)
{
    Json c;
    c["command"] = command_name(cfg.command);
    c["identity_id"] = cfg.identity_id ? Json(*cfg.identity_id) : Json(nullptr);
    Json p = Json::object();
    for (const auto& [k, v] : cfg.params)
        p[k] = to_string(v);
    c["params"] = p;
    c["n"] = cfg.n ? Json(*cfg.n) : Json(nullptr);
    c["n_range"] = cfg.n_range ? Json::array({cfg.n_range->first, cfg.n_range->second}) : Json(nullptr);
    c["mode"] = r.mode;
    c["precision_bits"] = cfg.precision_bits;
    c["eps"] = r.eps;
    c["seed"] = cfg.seed;
    c["trials"] = cfg.trials;
    c["sigma"] = cfg.sigma ? Json(to_string(*cfg.sigma)) : Json(nullptr);
    c["f"] = cfg.f ? Json(to_string(*cfg.f)) : Json(nullptr);
    c["format"] = cfg.format;
    return c;
}

Json build_report(const RunConfig& cfg, const Resolved& r, const std::vector<VerificationReport>& reps)
{
    Json doc;
    doc["schema_version"] = report_schema_version;
    doc["tool_version"] = tool_version;
    doc["config"] = config_json(cfg, r);
    Json entries = Json::array();
    long passed = 0, degenerate = 0;
    for (const auto& rep : reps) {
        entries.push_back(report_json(rep));
        passed += rep.pass;
        degenerate += rep.degenerate;
    }
    doc["reports"] = entries;
    const long total = static_cast<long>(reps.size());
    doc["summary"] = {{"total", total}, {"passed", passed}, {"failed", total - passed}, {"degenerate", degenerate}};
    return doc;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Json& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_object()) {
        std::string s;
        for (const auto& [k, x] : v.items())
            s += (s.empty() ? "" : ";") + k + "=" + x.get<std::string>();
        return s;
    }
    return v.dump();
}

std::string csv_from(const Json& doc)
{
    static const char* columns[] = {"identity_id", "n",        "params",     "mode",
                                    "lhs",         "rhs",      "abs_err",    "rel_err",
                                    "pass",        "degenerate", "truncation_terms", "quadrature_nodes"};
    std::string out;
    for (std::size_t i = 0; i < std::size(columns); ++i)
        out += (i ? "," : "") + std::string(columns[i]);
    out += "\r\n";
    for (const auto& e : doc.at("reports")) {
        for (std::size_t i = 0; i < std::size(columns); ++i)
            out += (i ? "," : "") + csv_field(csv_cell(e.at(columns[i])));
        out += "\r\n";
    }
    return out;
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out)
{
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f)
        fail(ErrorKind::DomainError, "cannot write '" + cfg.output_path + "'");
    f << text;
    if (!f)
        fail(ErrorKind::DomainError, "write to '" + cfg.output_path + "' failed");
}

int exit_code_for(ErrorKind k) { return k == ErrorKind::NoConvergence ? 3 : 2; }

void list_ids(std::ostream& out)
{
    for (const auto& id : identity_ids()) {
        const auto& r = lookup(id);
        out << id << '\t' << (r.approx_only ? "terminating-approx" : "terminating") << '\t' << r.anchor << '\n';
    }
    for (const auto& p : product_registry())
        out << p.name << '\t' << "product" << '\t' << p.anchor << '\n';
    for (const auto& i : integral_registry())
        out << i.name << '\t' << "integral" << '\t' << i.anchor << '\n';
}

int run_report(const RunConfig& cfg, std::ostream& out)
{
    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in)
        fail(ErrorKind::ParseError, "cannot read '" + cfg.input_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Json doc;
    try {
        doc = Json::parse(buf.str());
    } catch (const Json::exception& e) {
        fail(ErrorKind::ParseError, std::string("report is not valid JSON: ") + e.what());
    }
    if (!doc.contains("reports") || !doc.contains("summary"))
        fail(ErrorKind::ParseError, "report lacks reports or summary");
    emit(cfg.format == "csv" ? csv_from(doc) : doc.dump(2) + "\n", cfg, out);
    return doc["summary"].value("failed", 0L) == 0 ? 0 : 1;
}

} // namespace

std::string render_csv(const std::string& json_text)
{
    try {
        return csv_from(Json::parse(json_text));
    } catch (const Json::exception& e) {
        fail(ErrorKind::ParseError, std::string("report is not valid JSON: ") + e.what());
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        RunConfig cfg = parse_config(args);
        if (cfg.command == Command::List) {
            list_ids(out);
            return 0;
        }
        if (cfg.command == Command::Report)
            return run_report(cfg, out);

        Target t = resolve(*cfg.identity_id);
        Resolved r = resolve_mode(t, cfg);
        if (t.family != Family::Integral && (cfg.sigma || cfg.f))
            fail(ErrorKind::ParseError, "--sigma and --f apply only to integral representations");
        std::vector<VerificationReport> reps;
        switch (t.family) {
        case Family::Terminating: reps = run_terminating(t, cfg, r); break;
        case Family::Product: reps = run_product(t, cfg, r); break;
        case Family::Integral: reps = run_integral(t, cfg, r); break;
        }
        Json doc = build_report(cfg, r, reps);
        emit(cfg.format == "csv" ? csv_from(doc) : doc.dump(2) + "\n", cfg, out);
        const auto& s = doc["summary"];
        if (!cfg.output_path.empty())
            out << s["passed"] << "/" << s["total"] << " passed, " << s["degenerate"] << " degenerate -> "
                << cfg.output_path << "\n";
        return s["failed"] == 0 ? 0 : 1;
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const Error& e) {
        err << "qseries: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
}

} // namespace qseries
