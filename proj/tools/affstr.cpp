#include "affstr/report_json.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <iostream>

using namespace affstr;
using nlohmann::json;

namespace {

constexpr int kMaxExitFailures = 100;
constexpr int kConfigError = 125;

struct Options {
    std::optional<int> n;
    std::string orientation = "all";
    int k_max = 2;
    std::optional<std::size_t> max_letters;
    std::string format = "text";
    std::string t_samples = "2,3,5,7,-1";
    bool no_timing = false;
};

std::vector<Rational> parse_list(const std::string& text)
{
    std::vector<Rational> out;
    std::size_t from = 0;
    while (from <= text.size()) {
        std::size_t to = text.find(',', from);
        if (to == std::string::npos) to = text.size();
        out.push_back(parse_rational(text.substr(from, to - from)));
        from = to + 1;
    }
    return out;
}

std::vector<Rational> parse_samples(const std::string& text)
{
    auto out = parse_list(text);
    for (const auto& t : out)
        if (t == 0) throw std::invalid_argument("band parameter must be nonzero");
    return out;
}

VerifyConfig make_config(const Options& o)
{
    VerifyConfig cfg;
    cfg.n = o.n;
    if (o.orientation != "all") {
        Orientation::parse(o.orientation);
        if (o.n && o.orientation.size() != static_cast<std::size_t>(*o.n)) throw std::invalid_argument("orientation length must equal n");
        cfg.orientation = o.orientation;
        if (!cfg.n) cfg.n = static_cast<int>(o.orientation.size());
    }
    if (cfg.n && *cfg.n < 2) throw std::invalid_argument("n must be at least 2");
    if (o.k_max < 0) throw std::invalid_argument("k-max must be non-negative");
    cfg.k_max = o.k_max;
    cfg.max_letters = o.max_letters;
    if (cfg.n && o.max_letters && *o.max_letters < static_cast<std::size_t>((2 * *cfg.n + 2) * o.k_max))
        throw std::invalid_argument("max-letters must be at least (2n+2)*k-max");
    cfg.t_samples = parse_samples(o.t_samples);
    return cfg;
}

json config_json(const Options& o, const VerifyConfig& cfg)
{
    json samples = json::array();
    for (const auto& t : cfg.t_samples) samples.push_back(to_string(t));
    json j{{"orientation", o.orientation}, {"k_max", cfg.k_max}, {"t_samples", samples}};
    j["n"] = cfg.n ? json(*cfg.n) : json(nullptr);
    j["max_letters"] = cfg.max_letters ? json(*cfg.max_letters) : json(nullptr);
    return j;
}

CheckResult check_cartan(const VerifyConfig& cfg)
{
    return run_check(0, "Cartan data", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {})) {
            const std::string where = orientation_label(cd);
            r.count("orientations");
            r.expect(cd.R + cd.R.transpose() == cd.D * cd.C, [&] { return where + ": R + R^T != DC"; });
            r.expect(apply_matrix(cd.coxeter, cd.rho()) == cd.rho(), [&] { return where + ": c_H rho != rho"; });
            const auto inv = inverse(to_rational(cd.R));
            r.expect(inv && is_integral(-(*inv * to_rational(cd.R.transpose()))), [&] { return where + ": c_H not integral"; });
            for (int i = 0; i <= cd.n; ++i) {
                const std::int64_t want = cd.is_sink(i) ? 2 : cd.is_source(i) ? -2 : 0;
                r.expect(defect(cd, cd.simple(i)) == want, [&] { return where + ": defect of alpha_" + std::to_string(i); });
            }
            for (const auto& info : enumerate_positive_roots(cd, cfg.k_max)) {
                r.count("roots");
                r.count(std::string("defect_") + name(info.defect_class()));
                r.expect(info.defect == euler_form(cd, info.coords, cd.rho()), [&] { return where + ": defect of " + format_root(info.coords); });
                if (!info.real) r.expect(info.defect == 0, [&] { return where + ": isotropic root with nonzero defect"; });
            }
        }
    });
}

Report cmd_roots(const VerifyConfig& cfg)
{
    Report rep;
    rep.command = "roots";
    for (const auto& cd : campaign(cfg, {})) {
        rep.lines.push_back(orientation_label(cd));
        for (const auto& info : enumerate_positive_roots(cd, cfg.k_max)) {
            rep.lines.push_back("  " + format_root(info.coords) + (info.real ? info.is_long ? " real long " : " real short " : " isotropic ") +
                                "defect " + std::to_string(info.defect) + " " + name(info.defect_class()));
        }
        rep.data[cd.omega.str()] = to_json(cd, cfg.k_max);
    }
    rep.checks.push_back(check_cartan(cfg));
    return rep;
}

Report cmd_strings(const VerifyConfig& cfg)
{
    Report rep;
    rep.command = "strings";
    bool golden = false;
    for (const auto& cd : campaign(cfg, {})) {
        const auto bs = basic_strings(cd);
        const std::size_t L = default_letters(cd, cfg);
        json basic = json::object();
        rep.lines.push_back(orientation_label(cd));
        for (int i = 0; i <= cd.n; ++i) {
            basic["p" + std::to_string(i)] = to_string(cd, bs.p[i]);
            basic["q" + std::to_string(i)] = to_string(cd, bs.q[i]);
            rep.lines.push_back("  p" + std::to_string(i) + " = " + to_string(cd, bs.p[i]) + "   q" + std::to_string(i) + " = " + to_string(cd, bs.q[i]));
        }
        json tau = json::array();
        for (int i = 1; i <= cd.n; ++i) {
            basic["r" + std::to_string(i)] = to_string(cd, bs.r[i]);
            basic["r'" + std::to_string(i)] = to_string(cd, bs.rp[i]);
            tau.push_back(bs.tau[i]);
            rep.lines.push_back("  r" + std::to_string(i) + " = " + to_string(cd, bs.r[i]) + "   tau(" + std::to_string(i) + ") = " + std::to_string(bs.tau[i]));
        }
        const auto strings = enumerate_strings(cd, L, StringFilter::LocallyFree);
        const auto bands = enumerate_bands(cd, std::max(cfg.k_max, 1));
        rep.lines.push_back("  " + std::to_string(strings.size()) + " locally free strings with at most " + std::to_string(L) + " letters, " +
                            std::to_string(bands.size()) + " primitive bands");
        rep.data[cd.omega.str()] = {{"n", cd.n}, {"basic", basic}, {"tau", tau}, {"strings", strings.size()}, {"bands", bands.size()}, {"max_letters", L}};
        golden = golden || (cd.n == 5 && cd.omega.str() == "LRRRL");
    }
    if (golden) rep.checks.push_back(check_golden());
    rep.checks.push_back(check_rank_vectors(cfg));
    rep.checks.push_back(check_fibres(cfg));
    return rep;
}

int parse_int(const std::string& text)
{
    int v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) throw Error(ErrorCode::ParseError, "not an integer: '" + text + "'");
    return v;
}

/// theta:i, chi:WORD, class:WORD, band:LETTERS[^m], root:a,b,..., iso:k:i.
Function parse_function(const CartanData& cd, ThetaBuilder& tb, const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "function needs a kind: " + text);
    const std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
    if (kind == "theta") return theta(cd, parse_int(arg));
    if (kind == "chi") return chi(cd, parse_word(cd, arg));
    if (kind == "class") return chi_class(cd, parse_word(cd, arg));
    if (kind == "band") {
        const auto caret = arg.rfind('^');
        const int m = caret == std::string::npos ? 1 : parse_int(arg.substr(caret + 1));
        return chi_band(cd, parse_band(cd, arg.substr(0, caret)), m);
    }
    if (kind == "root") {
        RootVector v;
        for (const auto& x : parse_list(arg)) v.push_back(to_int64(x));
        if (v.size() != cd.rank()) throw Error(ErrorCode::ParseError, "root needs " + std::to_string(cd.rank()) + " entries");
        return tb.theta_real(v).first;
    }
    if (kind == "iso") {
        const auto sep = arg.find(':');
        if (sep == std::string::npos) throw Error(ErrorCode::ParseError, "iso needs k:i");
        return tb.theta_isotropic(parse_int(arg.substr(0, sep)), parse_int(arg.substr(sep + 1)));
    }
    throw Error(ErrorCode::ParseError, "unknown function kind " + kind);
}

Report cmd_bracket(const VerifyConfig& cfg, const std::string& f_spec, const std::string& g_spec, const std::string& op)
{
    Report rep;
    rep.command = op;
    for (const auto& cd : campaign(cfg, {})) {
        Algebra alg(cd, EvalOptions{cfg.t_samples});
        ThetaBuilder tb(alg);
        const Function f = parse_function(cd, tb, f_spec), g = parse_function(cd, tb, g_spec);
        const Function h = op == "convolve" ? alg.convolve(f, g) : alg.bracket(f, g);
        rep.data[cd.omega.str()] = {{"f", to_json(cd, f)}, {"g", to_json(cd, g)}, {"result", to_json(cd, h)}, {"primitive", is_primitive(h)}};
        rep.lines.push_back(orientation_label(cd) + ": " + op + "(" + f_spec + ", " + g_spec + ") of grade " + format_root(h.grade));
        std::string body = to_string(cd, h), line;
        for (std::size_t from = 0; from <= body.size();) {
            std::size_t to = body.find('\n', from);
            if (to == std::string::npos) to = body.size();
            rep.lines.push_back("  " + body.substr(from, to - from));
            from = to + 1;
        }
    }
    return rep;
}

Report cmd_verify(const VerifyConfig& cfg, const std::vector<int>& only)
{
    Report rep;
    rep.command = "verify";
    for (int id : only)
        if (id < 1 || id > static_cast<int>(all_checks().size())) throw Error(ErrorCode::OutOfBounds, "no criterion " + std::to_string(id));
    for (const auto& [id, fn] : all_checks())
        if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) rep.checks.push_back(fn(cfg));
    return rep;
}

void add_common(CLI::App* sub, Options& o, bool need_n)
{
    auto* n = sub->add_option("--n", o.n, "rank n >= 2");
    if (need_n) n->required();
    sub->add_option("--orientation", o.orientation, "L/R word of length n, or all")->capture_default_str();
    sub->add_option("--k-max", o.k_max, "largest rho-coefficient")->capture_default_str();
    sub->add_option("--max-letters", o.max_letters, "string length bound");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_option("--t-samples", o.t_samples, "comma separated band parameters")->capture_default_str();
    sub->add_flag("--no-timing", o.no_timing, "omit wall times for byte-stable reports");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Locally free strings, bands and convolution brackets for type C~n"};
    app.require_subcommand(1);
    Options o;
    std::string f_spec, g_spec, op = "bracket";
    std::vector<int> only;
    auto* roots = app.add_subcommand("roots", "positive roots and Cartan checks");
    auto* strings = app.add_subcommand("strings", "basic strings, enumeration and fibre checks");
    auto* bracket = app.add_subcommand("bracket", "bracket or product of two functions");
    auto* verify = app.add_subcommand("verify", "acceptance checks");
    add_common(roots, o, true);
    add_common(strings, o, true);
    add_common(bracket, o, true);
    add_common(verify, o, false);
    bracket->add_option("f", f_spec, "theta:i | chi:WORD | class:WORD | band:LETTERS[^m] | root:a,b,.. | iso:k:i")->required();
    bracket->add_option("g", g_spec, "second function")->required();
    bracket->add_option("--op", op, "bracket or convolve")->check(CLI::IsMember({"bracket", "convolve"}))->capture_default_str();
    verify->add_option("--only", only, "criterion ids")->delimiter(',');
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    Report rep;
    VerifyConfig cfg;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        cfg = make_config(o);
        if (roots->parsed()) rep = cmd_roots(cfg);
        else if (strings->parsed()) rep = cmd_strings(cfg);
        else if (bracket->parsed()) rep = cmd_bracket(cfg, f_spec, g_spec, op);
        else rep = cmd_verify(cfg, only);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.config = config_json(o, cfg);
    const bool timing = !o.no_timing;
    if (o.format == "json") std::cout << to_json(rep, timing).dump(2) << "\n";
    else std::cout << to_text(rep, timing);
    return static_cast<int>(std::min<std::int64_t>(rep.failed(), kMaxExitFailures));
}
