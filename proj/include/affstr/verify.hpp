#pragma once

#include "affstr/homext.hpp"
#include "affstr/theta.hpp"

#include <chrono>
#include <limits>
#include <set>

namespace affstr {

/// Outcome of one acceptance check.
struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = true;
    std::int64_t failure_count = 0;
    std::map<std::string, std::int64_t> counters;
    std::vector<std::string> failures;  ///< first few counterexamples
    std::vector<std::string> notes;
    double seconds = 0;

    static constexpr std::size_t kMaxExamples = 8;

    void fail(std::string what)
    {
        pass = false;
        ++failure_count;
        if (failures.size() < kMaxExamples) failures.push_back(std::move(what));
    }
    void expect(bool ok, const std::function<std::string()>& what)
    {
        if (!ok) fail(what());
    }
    void count(const std::string& key, std::int64_t d = 1) { counters[key] += d; }
};

struct VerifyConfig {
    std::optional<int> n;                   ///< restricts the campaign to one rank
    std::optional<std::string> orientation; ///< one orientation; unset means all
    int k_max = 2;
    std::optional<std::size_t> max_letters;
    std::vector<Rational> t_samples{2, 3, 5, 7, -1};
};

inline std::string orientation_label(const CartanData& cd) { return "n=" + std::to_string(cd.n) + " " + cd.omega.str(); }

/// The (n, orientation) pairs a check runs over, given its default ranks.
inline std::vector<CartanData> campaign(const VerifyConfig& cfg, std::vector<int> default_ns)
{
    if (cfg.n) default_ns = {*cfg.n};
    std::vector<CartanData> out;
    for (int n : default_ns) {
        if (cfg.orientation && *cfg.orientation != "all") {
            if (cfg.orientation->size() != static_cast<std::size_t>(n)) continue;
            out.push_back(build_cartan(n, Orientation::parse(*cfg.orientation)));
            continue;
        }
        for (const auto& o : Orientation::all(n)) out.push_back(build_cartan(n, o));
    }
    return out;
}

template <class F>
CheckResult run_check(int id, std::string name, F&& body)
{
    CheckResult r;
    r.id = id;
    r.name = std::move(name);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Reference table of the n = 5 worked example; entries that are not strings carry their corrected reading.
struct GoldenEntry {
    std::string name;
    std::string printed;
    std::string reading;  ///< empty when the reference entry is used as is
    std::string reason;
};

inline std::vector<GoldenEntry> golden_table()
{
    return {
        {"p0", "e0", "", ""},
        {"p1", "e0.h1.h2^-2.h3-.h4-", "e0.h1.h2-.h3-.h4-", "exponent -2 is not a letter; read as a single inverse letter"},
        {"p2", "h3-.h4-", "", ""},
        {"p3", "h4-", "", ""},
        {"p4", "1_4", "", ""},
        {"p5", "h5.en-.h5", "h5.en-.h5-", "rejected by the string condition at vertex 5; read with the last letter inverted"},
        {"q0", "h1-.e0-.h1", "", ""},
        {"q1", "1_1", "", ""},
        {"q2", "h2-", "", ""},
        {"q3", "h2-.h3-", "", ""},
        {"q4", "h2-.h3-.h4-.h5.en", "", ""},
        {"q5", "en", "", ""},
        {"r1", "h2-.h3-.h4-", "", ""},
        {"r2", "h1-.e0-", "", ""},
        {"r3", "1_2-", "", ""},
        {"r4", "1_3-", "", ""},
        {"r5", "en-.h5-", "", ""},
    };
}

inline CheckResult check_golden()
{
    return run_check(1, "golden worked example", [](CheckResult& r) {
        const auto cd = build_cartan(5, Orientation::parse("LRRRL"));
        const auto bs = basic_strings(cd);
        auto computed = [&](const std::string& name) {
            const int i = name[1] - '0';
            const Word& w = name[0] == 'p' ? bs.p[i] : name[0] == 'q' ? bs.q[i] : bs.r[i];
            return to_string(cd, w);
        };
        for (const auto& e : golden_table()) {
            r.count("entries");
            const std::string got = computed(e.name);
            if (e.reading.empty()) {
                r.expect(got == e.printed, [&] { return e.name + ": computed " + got + ", table " + e.printed; });
                continue;
            }
            bool rejected = false;
            try {
                parse_word(cd, e.printed);
            } catch (const Error&) {
                rejected = true;
            }
            r.expect(rejected, [&] { return e.name + ": reference entry " + e.printed + " is a valid string"; });
            r.expect(got == e.reading, [&] { return e.name + ": computed " + got + ", corrected reading " + e.reading; });
            r.count("flagged_typos");
            r.notes.push_back("typo " + e.name + ": reference gives " + e.printed + ", " + e.reason + " (" + e.reading + ")");
        }
        for (int i = 1; i <= 5; ++i) {
            r.count("entries", 2);
            r.expect(bs.tau[i] == i % 5 + 1, [&] { return "tau(" + std::to_string(i) + ") = " + std::to_string(bs.tau[i]); });
            const int next = i % 5 + 1;
            r.expect(bs.rp[i] == inverse(bs.r[next]), [&] { return "r'" + std::to_string(i) + " is not the inverse of r" + std::to_string(next); });
        }
    });
}

/// Locally free strings of one orientation grouped by rank.
inline std::map<RootVector, std::set<Word>> string_fibres(const CartanData& cd, std::size_t max_letters)
{
    std::map<RootVector, std::set<Word>> out;
    for (auto& w : enumerate_strings(cd, max_letters, StringFilter::LocallyFree)) out[rank_vector(cd, w)].insert(std::move(w));
    return out;
}

inline std::size_t default_letters(const CartanData& cd, const VerifyConfig& cfg)
{
    return cfg.max_letters.value_or(static_cast<std::size_t>((2 * cd.n + 2) * 3));
}

inline CheckResult check_rank_vectors(const VerifyConfig& cfg)
{
    return run_check(2, "rank vectors are roots", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3, 4})) {
            const std::size_t L = default_letters(cd, cfg);
            const RootTable roots(cd, 2 * cfg.k_max + 4);
            std::set<RootVector> attained;
            for (const auto& [rk, ws] : string_fibres(cd, L)) {
                r.count("strings", static_cast<std::int64_t>(ws.size()));
                r.expect(roots.find(rk) != nullptr, [&] { return orientation_label(cd) + ": rank " + format_root(rk) + " of " + to_string(cd, *ws.begin()) + " is not a root"; });
                attained.insert(rk);
            }
            for (const auto& b : enumerate_bands(cd, 3)) {
                r.count("bands");
                const RootVector rk = rank_vector(cd, b);
                r.expect(roots.find(rk) != nullptr, [&] { return orientation_label(cd) + ": band " + to_string(cd, b) + " has rank " + format_root(rk); });
                attained.insert(rk);
            }
            std::set<RootVector> want, got;
            for (const auto& info : enumerate_positive_roots(cd, cfg.k_max)) want.insert(info.coords);
            for (const auto& rk : attained) {
                const auto* info = roots.find(rk);
                if (info && info->k <= cfg.k_max) got.insert(rk);
            }
            r.count("roots", static_cast<std::int64_t>(want.size()));
            const auto bs = basic_strings(cd);
            for (const auto& a : want) {
                if (got.count(a)) continue;
                std::size_t shortest = std::numeric_limits<std::size_t>::max();
                for (const auto& c : root_to_classes(cd, bs, a))
                    for (const auto& m : members(cd, c)) shortest = std::min(shortest, m.size());
                if (shortest > L) {
                    r.count("skipped_beyond_letters");
                    continue;
                }
                r.fail(orientation_label(cd) + ": root " + format_root(a) + " not attained");
            }
        }
    });
}

inline CheckResult check_fibres(const VerifyConfig& cfg)
{
    return run_check(3, "fibre structure", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3, 4})) {
            const auto bs = basic_strings(cd);
            const std::size_t L = default_letters(cd, cfg);
            const auto fibres = string_fibres(cd, L);
            const TauLocallyFreeIndex tau_lf(cd, bs, L);
            const std::string where = orientation_label(cd);
            for (const auto& info : enumerate_positive_roots(cd, cfg.k_max)) {
                const auto classes = root_to_classes(cd, bs, info.coords);
                std::set<Word> from_classes;
                std::size_t total = 0, longest = 0;
                for (const auto& c : classes)
                    for (const auto& m : members(cd, c)) {
                        from_classes.insert(m);
                        ++total;
                        longest = std::max(longest, m.size());
                    }
                if (longest > L) {
                    r.count("skipped_beyond_letters");
                    continue;
                }
                const std::string root = where + " " + format_root(info.coords);
                auto it = fibres.find(info.coords);
                const std::set<Word> fibre = it == fibres.end() ? std::set<Word>{} : it->second;
                r.expect(from_classes == fibre, [&] { return root + ": classes do not cover the fibre"; });
                r.expect(total == from_classes.size(), [&] { return root + ": classes overlap"; });
                if (!info.real) {
                    r.count("isotropic_fibres");
                    r.expect(classes.size() == static_cast<std::size_t>(2 * cd.n), [&] { return root + ": " + std::to_string(classes.size()) + " classes"; });
                    continue;
                }
                r.count("real_fibres");
                const bool trivial = classes.front().is_trivial();
                if (trivial) r.count("trivial_classes");
                const std::size_t want_classes = info.is_long || trivial ? 1 : 2;
                r.expect(classes.size() == want_classes, [&] { return root + ": " + std::to_string(classes.size()) + " classes"; });
                if (!trivial)
                    r.expect(is_self_inverse(classes.front()) == info.is_long, [&] { return root + ": self-inverse does not match length"; });
                int in_class = 0;
                for (const auto& w : members(cd, classes.front())) in_class += tau_lf.contains(w);
                r.expect(in_class == (info.is_long ? 2 : 1), [&] { return root + ": " + std::to_string(in_class) + " tau-locally free members"; });
            }
        }
        r.notes.push_back("trivial classes [1_i] are self-inverse although alpha_i is short; the self-inverse test skips them");
    });
}

/// Locally free strings of total dimension at most `max_dim`.
inline std::vector<Word> small_strings(const CartanData& cd, int max_dim)
{
    std::vector<Word> out;
    for (auto& w : enumerate_strings(cd, static_cast<std::size_t>(max_dim - 1), StringFilter::LocallyFree)) out.push_back(std::move(w));
    return out;
}

inline CheckResult check_linear_algebra(const VerifyConfig& cfg)
{
    return run_check(4, "linear algebra", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3, 4})) {
            const std::string where = orientation_label(cd);
            const auto bs = basic_strings(cd);
            r.expect(cd.R + cd.R.transpose() == cd.D * cd.C, [&] { return where + ": R + R^T != DC"; });
            const auto inv = inverse(to_rational(cd.R));
            r.expect(inv.has_value(), [&] { return where + ": R singular"; });
            if (inv) {
                const QMatrix c = -(*inv * to_rational(cd.R.transpose()));
                r.expect(is_integral(c) && to_integer(c) == cd.coxeter, [&] { return where + ": Coxeter matrix not integral"; });
            }
            r.expect(apply_matrix(cd.coxeter, cd.rho()) == cd.rho(), [&] { return where + ": c_H rho != rho"; });
            for (int i = 0; i <= cd.n; ++i) {
                r.expect(apply_matrix(cd.coxeter, rank_vector(cd, bs.p[i])) == RootVector(cd.rank(), 0) - rank_vector(cd, bs.q[i]),
                         [&] { return where + ": c_H rk P_" + std::to_string(i) + " != -rk I_" + std::to_string(i); });
                const std::int64_t want = cd.is_sink(i) ? 2 : cd.is_source(i) ? -2 : 0;
                r.expect(defect(cd, cd.simple(i)) == want, [&] { return where + ": defect of alpha_" + std::to_string(i); });
            }
            int pairs = 0;
            const auto words = small_strings(cd, 5);
            for (const auto& v : words)
                for (const auto& w : words) {
                    if (v.size() + w.size() + 2 > 8) continue;
                    const auto mv = string_module(cd, v), mw = string_module(cd, w);
                    const auto lhs = euler_form(cd, rank_vector(cd, v), rank_vector(cd, w));
                    const auto rhs = dim_hom(mv, mw) - dim_ext1(cd, mv, mw);
                    r.expect(lhs == rhs, [&] { return where + ": Euler form " + to_string(cd, v) + ", " + to_string(cd, w); });
                    ++pairs;
                }
            const auto band = band_module(cd, stable_band(cd), Rational(2), 1);
            for (const auto& w : words) {
                if (w.size() > 3) continue;
                const auto mw = string_module(cd, w);
                r.expect(euler_form(cd, cd.rho(), rank_vector(cd, w)) == dim_hom(band, mw) - dim_ext1(cd, band, mw),
                         [&] { return where + ": Euler form band, " + to_string(cd, w); });
                ++pairs;
            }
            r.count("euler_pairs", pairs);
            r.expect(pairs >= 20, [&] { return where + ": only " + std::to_string(pairs) + " Euler pairs"; });
        }
    });
}

inline CheckResult check_key_bracket(const VerifyConfig& cfg)
{
    return run_check(5, "key bracket", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3})) {
            Algebra alg(cd);
            const auto& bs = alg.strings();
            const auto ws = enumerate_strings(cd, cfg.max_letters.value_or(10), StringFilter::LocallyFree);
            for (int i = 1; i <= cd.n; ++i)
                for (const auto& rr : members(cd, similarity_class(cd, bs.r[i])))
                    for (const auto& w : ws) {
                        r.count("pairs");
                        const auto kb = key_bracket(cd, bs, w, rr);
                        if (!kb.is_zero()) r.count("nonzero");
                        r.expect(kb == alg.bracket(chi(cd, w), chi(cd, rr)),
                                 [&] { return orientation_label(cd) + ": w=" + to_string(cd, w) + " r=" + to_string(cd, rr); });
                    }
        }
    });
}

inline CheckResult check_serre(const VerifyConfig& cfg)
{
    return run_check(6, "Serre relations", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3, 4})) {
            Algebra alg(cd);
            for (int i = 0; i <= cd.n; ++i)
                for (int j = 0; j <= cd.n; ++j) {
                    if (std::abs(i - j) != 1) continue;
                    r.count("relations");
                    r.expect(serre_check(alg, i, j), [&] { return orientation_label(cd) + ": (ad theta_" + std::to_string(i) + ") theta_" + std::to_string(j); });
                }
        }
    });
}

/// Theta^{(n)}_{k rho} at the stable band module with parameter t.
inline Rational isotropic_value(const CartanData& cd, ThetaBuilder& tb, int k, const Rational& t)
{
    const RootVector beta = static_cast<std::int64_t>(k) * cd.rho() - cd.simple(cd.n);
    const Function& f = tb.theta_real(beta).first;
    const Function g = theta(cd, cd.n);
    const Symbol target = band_symbol(stable_band(cd), k);
    const EvalOptions opt{{t}};
    return product_value(cd, f, g, target, opt) - product_value(cd, g, f, target, opt);
}

inline CheckResult check_theta_functions(const VerifyConfig& cfg)
{
    return run_check(7, "Theta functions for positive roots", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3})) {
            const std::string where = orientation_label(cd);
            Algebra alg(cd);
            ThetaBuilder tb(alg);
            const auto fibres = string_fibres(cd, default_letters(cd, cfg));
            for (const auto& info : enumerate_positive_roots(cd, cfg.k_max)) {
                if (!info.real) continue;
                const std::string root = where + " " + format_root(info.coords);
                const auto& [f, step] = tb.theta_real(info.coords);
                r.count("real_roots");
                r.expect(is_primitive(f), [&] { return root + ": not primitive"; });
                std::set<Symbol> support, want;
                bool unit = true;
                for (const auto& [s, c] : f.terms) {
                    support.insert(s);
                    unit = unit && c == 1;
                }
                if (auto it = fibres.find(info.coords); it != fibres.end())
                    for (const auto& w : it->second) want.insert(string_symbol(w));
                r.expect(unit && support == want, [&] { return root + ": support differs from the fibre\n" + to_string(cd, f); });
                const Rational mag = step.factor < 0 ? Rational(-1) * step.factor : step.factor;
                switch (step.kind) {
                case ThetaStep::Kind::Peel:
                    r.count(info.is_long ? "peel_long" : "peel_short");
                    r.expect(mag == (info.is_long ? 2 : 1), [&] { return root + ": peel factor " + to_string(step.factor); });
                    break;
                case ThetaStep::Kind::Regular:
                    r.count("regular_factor_" + to_string(mag));
                    break;
                case ThetaStep::Kind::Nested: r.count("nested"); break;
                case ThetaStep::Kind::Simple: r.count("simple"); break;
                }
            }
            for (int k = 1; k <= cfg.k_max; ++k) {
                std::vector<Function> diffs, family;
                for (int i = 1; i < cd.n; ++i) diffs.push_back(tb.theta_isotropic(k, i));
                for (const auto& d : diffs) r.expect(is_primitive(d), [&] { return where + ": difference function not primitive"; });
                r.expect(linear_independent(diffs), [&] { return where + ": difference functions dependent at k=" + std::to_string(k); });
                Function sum = zero_function(static_cast<std::int64_t>(k) * cd.rho());
                for (int i = 1; i <= cd.n; ++i) sum = sum + tb.difference_function(k, i);
                r.expect(sum.is_zero(), [&] { return where + ": difference functions do not telescope"; });
                family = diffs;
                family.push_back(tb.theta_isotropic(k, cd.n));
                r.expect(is_primitive(family.back()), [&] { return where + ": Theta^(n) not primitive"; });
                r.expect(function_rank(family) == static_cast<std::size_t>(cd.n), [&] { return where + ": family rank " + std::to_string(function_rank(family)); });
                for (const auto& t : cfg.t_samples) {
                    r.count("band_values");
                    const Rational v = isotropic_value(cd, tb, k, t);
                    r.expect(v == isotropic_sign(cd), [&] { return where + ": Theta^(n) at k=" + std::to_string(k) + " t=" + to_string(t) + " is " + to_string(v); });
                }
            }
        }
        if (r.counters["peel_long"] == 0) r.fail("no long-root doubling exercised");
        r.notes.push_back("Theta^(n) is [Theta_{k rho - alpha_n}, theta_n]; its value on the stable band is +1 when n is a source and -1 when n is a sink");
    });
}

inline CheckResult check_indecomposable_support(const VerifyConfig& cfg)
{
    return run_check(8, "indecomposable support", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3})) {
            Algebra alg(cd);
            std::vector<Function> pieces;
            std::set<Symbol> seen;
            for (const auto& w : small_strings(cd, 7))
                if (seen.insert(string_symbol(w)).second) pieces.push_back(chi(cd, w));
            for (const auto& b : enumerate_bands(cd, 1)) pieces.push_back(chi_band(cd, b));
            std::vector<std::pair<std::size_t, std::size_t>> eligible;
            for (std::size_t a = 0; a < pieces.size(); ++a)
                for (std::size_t b = a + 1; b < pieces.size(); ++b) {
                    const Symbol& x = pieces[a].terms.begin()->first;
                    const Symbol& y = pieces[b].terms.begin()->first;
                    if (total_dim(cd, x) + total_dim(cd, y) <= 8) eligible.emplace_back(a, b);
                }
            const std::size_t want = std::min<std::size_t>(50, eligible.size());
            for (std::size_t c = 0; c < want; ++c) {
                const auto [a, b] = eligible[c * eligible.size() / want];
                const Symbol& x = pieces[a].terms.begin()->first;
                const Symbol& y = pieces[b].terms.begin()->first;
                Function expected{pieces[a].grade + pieces[b].grade, {}};
                expected.add(direct_sum(x, y), 1);
                const Function diff = alg.convolve(pieces[a], pieces[b]) - expected;
                r.count("pairs");
                if (x.parts.front().band || y.parts.front().band) r.count("band_pairs");
                r.expect(is_primitive(diff), [&] { return orientation_label(cd) + ": " + to_string(cd, x) + " * " + to_string(cd, y) + "\n" + to_string(cd, diff); });
            }
        }
    });
}

inline CheckResult check_tier_consistency(const VerifyConfig& cfg)
{
    return run_check(9, "tier consistency", [&](CheckResult& r) {
        for (const auto& cd : campaign(cfg, {2, 3})) {
            const Band b = stable_band(cd);
            const Symbol target = band_symbol(b, 1);
            std::vector<Function> parts;
            for (const auto& w : enumerate_strings(cd, static_cast<std::size_t>(2 * cd.n + 1), StringFilter::LocallyFree))
                if (leq(rank_vector(cd, w), cd.rho())) parts.push_back(chi(cd, w));
            for (const auto& f : parts)
                for (const auto& g : parts) {
                    if (f.grade + g.grade != cd.rho()) continue;
                    const Rational coordinate = coordinate_value(cd, f, g, target);
                    if (coordinate != 0) r.count("nonzero");
                    for (const auto& t : cfg.t_samples) {
                        r.count("comparisons");
                        const Rational morphism = band_value_by_morphisms(cd, f, g, b, t, 1);
                        r.expect(morphism == coordinate, [&] {
                            return orientation_label(cd) + ": " + to_string(cd, f.terms.begin()->first) + " * " + to_string(cd, g.terms.begin()->first) +
                                   " at t=" + to_string(t) + ": " + to_string(morphism) + " vs " + to_string(coordinate);
                        });
                    }
                }
        }
    });
}

using CheckFn = CheckResult (*)(const VerifyConfig&);

inline const std::vector<std::pair<int, CheckFn>>& all_checks()
{
    static const std::vector<std::pair<int, CheckFn>> checks{
        {1, [](const VerifyConfig&) { return check_golden(); }},
        {2, check_rank_vectors},
        {3, check_fibres},
        {4, check_linear_algebra},
        {5, check_key_bracket},
        {6, check_serre},
        {7, check_theta_functions},
        {8, check_indecomposable_support},
        {9, check_tier_consistency},
    };
    return checks;
}

} // namespace affstr
