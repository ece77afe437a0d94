#pragma once

#include "affstr/verify.hpp"

#include "json.hpp"

namespace affstr {

inline constexpr const char* kReportSchema = "affstr-report/1";

template <class T>
nlohmann::json matrix_json(const Matrix<T>& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if constexpr (std::is_same_v<T, Rational>) row.push_back(to_string(m(i, j)));
            else row.push_back(m(i, j).get_si());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json to_json(const RootInfo& r)
{
    return {{"coords", r.coords}, {"k", r.k}, {"real", r.real}, {"long", r.is_long}, {"defect", r.defect}, {"class", name(r.defect_class())}};
}

/// Cartan data with the positive roots of rho-coefficient at most k_max.
inline nlohmann::json to_json(const CartanData& cd, int k_max)
{
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& info : enumerate_positive_roots(cd, k_max)) roots.push_back(to_json(info));
    return {{"n", cd.n}, {"omega", cd.omega.str()}, {"C", matrix_json(cd.C)}, {"D", matrix_json(cd.D)}, {"R", matrix_json(cd.R)},
            {"coxeter", matrix_json(cd.coxeter)}, {"roots", roots}};
}

/// dims and row-major matrices with "p/q" entries.
inline nlohmann::json to_json(const Representation& m)
{
    nlohmann::json mats = nlohmann::json::array();
    for (const auto& a : m.mats) mats.push_back(matrix_json(a));
    return {{"dims", m.dims}, {"mats", mats}};
}

/// Host edges with their labels and the vertex fibre map.
inline nlohmann::json to_json(const Winding& f)
{
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t a = 0; a < f.host.arrows.size(); ++a)
        edges.push_back({{"source", f.host.arrows[a].first}, {"target", f.host.arrows[a].second}, {"label", f.arrow_label[a]}});
    return {{"vertices", f.host.vertices}, {"edges", edges}, {"fibre", f.vertex_label}};
}

inline nlohmann::json to_json(const CartanData& cd, const Function& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [s, c] : f.terms) terms.push_back({{"symbol", to_string(cd, s)}, {"coeff", to_string(c)}});
    return {{"grade", f.grade}, {"terms", terms}};
}

/// Inverse of to_json; symbols are parsed back through the string and band syntax.
inline Function function_from_json(const CartanData& cd, const nlohmann::json& j)
{
    Function f{j.at("grade").get<RootVector>(), {}};
    for (const auto& t : j.at("terms")) {
        std::vector<Piece> parts;
        const std::string text = t.at("symbol").get<std::string>();
        if (text != "0") {
            std::size_t from = 0;
            while (from <= text.size()) {
                std::size_t to = text.find(" + ", from);
                if (to == std::string::npos) to = text.size();
                std::string piece = text.substr(from, to - from);
                if (piece.rfind("band:", 0) == 0) {
                    int m = 1;
                    if (auto caret = piece.rfind('^'); caret != std::string::npos) {
                        m = std::stoi(piece.substr(caret + 1));
                        piece = piece.substr(0, caret);
                    }
                    parts.push_back(band_piece(parse_band(cd, piece), m));
                } else {
                    parts.push_back(string_piece(parse_word(cd, piece)));
                }
                from = to + 3;
            }
        }
        f.add(make_symbol(std::move(parts)), parse_rational(t.at("coeff").get<std::string>()));
    }
    return f;
}

inline nlohmann::json to_json(const CheckResult& r, bool timing)
{
    nlohmann::json j{{"id", r.id}, {"name", r.name}, {"status", r.pass ? "pass" : "fail"}, {"failures", r.failure_count},
                     {"counters", r.counters}, {"counterexamples", r.failures}, {"notes", r.notes}};
    if (timing) j["seconds"] = r.seconds;
    return j;
}

/// A command's output: checks plus command-specific data.
struct Report {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json data = nlohmann::json::object();
    std::vector<std::string> lines;  ///< human-readable form of data
    std::vector<CheckResult> checks;
    double seconds = 0;

    std::int64_t failed() const
    {
        return std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
    }
};

inline nlohmann::json to_json(const Report& rep, bool timing)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) checks.push_back(to_json(c, timing));
    nlohmann::json j{{"schema", kReportSchema}, {"command", rep.command}, {"config", rep.config}, {"data", rep.data}, {"checks", checks}, {"failed", rep.failed()}};
    if (timing) j["seconds"] = rep.seconds;
    return j;
}

inline std::string status_line(const CheckResult& r, bool timing)
{
    std::string s = std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name;
    for (const auto& [k, v] : r.counters) s += " " + k + "=" + std::to_string(v);
    if (timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " (%.2fs)", r.seconds);
        s += buf;
    }
    return s;
}

inline std::string to_text(const Report& rep, bool timing)
{
    std::string out = rep.command + "\n";
    for (const auto& l : rep.lines) out += l + "\n";
    for (const auto& c : rep.checks) {
        out += status_line(c, timing) + "\n";
        for (const auto& f : c.failures) out += "  counterexample: " + f + "\n";
        for (const auto& n : c.notes) out += "  note: " + n + "\n";
    }
    out += std::to_string(rep.failed()) + " failed\n";
    return out;
}

} // namespace affstr
