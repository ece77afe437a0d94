#pragma once

#include "affstr/cartan.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace affstr {

enum class RootKind { Alpha, Beta, Imaginary };
enum class DefectClass { Preprojective, Regular, Preinjective };

inline const char* name(DefectClass c)
{
    switch (c) {
    case DefectClass::Preprojective: return "preprojective";
    case DefectClass::Regular: return "regular";
    case DefectClass::Preinjective: return "preinjective";
    }
    return "?";
}

struct RootInfo {
    RootVector coords;
    int k = 0;          ///< rho-coefficient
    int sign = 0;       ///< +1 for k*rho + x, -1 for k*rho - x, 0 for imaginary
    RootKind kind = RootKind::Imaginary;
    int i = 0;
    int j = 0;
    bool real = false;
    bool is_long = false; ///< k*rho +- beta_ii, including beta_nn = alpha_nn
    std::int64_t defect = 0;

    DefectClass defect_class() const
    {
        return defect > 0 ? DefectClass::Preprojective : defect < 0 ? DefectClass::Preinjective : DefectClass::Regular;
    }
};

/// alpha_{ij} for 1 <= i <= j <= n.
inline RootVector alpha_ij(int n, int i, int j)
{
    RootVector v(n + 1, 0);
    for (int k = i; k <= j; ++k) v[k] += 1;
    return v;
}

/// beta_{ij} = alpha_{in} + alpha_{j,n-1} for 1 <= i <= j <= n-1.
inline RootVector beta_ij(int n, int i, int j) { return alpha_ij(n, i, n) + alpha_ij(n, j, n - 1); }

/// rho - alpha_{1,n-1}, written alpha_{0n} in the rank tables.
inline RootVector alpha_0n(int n)
{
    RootVector v(n + 1, 1);
    return v;
}

inline RootVector rho_vector(int n)
{
    RootVector r(n + 1, 2);
    r.front() = 1;
    r.back() = 1;
    return r;
}

/// All positive roots with rho-coefficient at most k_max, ordered by (k, type, i, j).
/// Type order: k*rho + alpha, k*rho + beta, k*rho - alpha, k*rho - beta, k*rho.
inline std::vector<RootInfo> enumerate_positive_roots(const CartanData& cd, int k_max)
{
    if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
    const int n = cd.n;
    const RootVector rho = rho_vector(n);
    std::vector<RootInfo> out;
    std::set<RootVector> seen;
    auto push = [&](RootInfo info) {
        if (!seen.insert(info.coords).second) return;
        info.defect = defect(cd, info.coords);
        out.push_back(std::move(info));
    };
    for (int k = 0; k <= k_max; ++k) {
        const RootVector base = static_cast<std::int64_t>(k) * rho;
        for (int sign : {1, -1}) {
            if (sign < 0 && k == 0) continue;
            for (int i = 1; i <= n; ++i)
                for (int j = i; j <= n; ++j) {
                    const RootVector a = alpha_ij(n, i, j);
                    push({sign > 0 ? base + a : base - a, k, sign, RootKind::Alpha, i, j, true, i == n && j == n, 0});
                }
            for (int i = 1; i <= n - 1; ++i)
                for (int j = i; j <= n - 1; ++j) {
                    const RootVector b = beta_ij(n, i, j);
                    push({sign > 0 ? base + b : base - b, k, sign, RootKind::Beta, i, j, true, i == j, 0});
                }
        }
        if (k >= 1) push({base, k, 0, RootKind::Imaginary, 0, 0, false, false, 0});
    }
    return out;
}

/// Classifies an arbitrary vector; returns nullopt when it is not a positive root.
inline std::optional<RootInfo> classify_root(const CartanData& cd, const RootVector& v)
{
    if (v.size() != cd.rank()) return std::nullopt;
    std::int64_t height = 0;
    for (auto x : v) {
        if (x < 0) return std::nullopt;
        height += x;
    }
    if (height == 0) return std::nullopt;
    const int k_max = static_cast<int>(v.front() + v.back()) + 1;
    for (const auto& r : enumerate_positive_roots(cd, k_max))
        if (r.coords == v) return r;
    return std::nullopt;
}

inline bool is_positive_root(const CartanData& cd, const RootVector& v) { return classify_root(cd, v).has_value(); }

/// Membership index for repeated lookups.
class RootTable {
public:
    RootTable(const CartanData& cd, int k_max)
    {
        for (auto& r : enumerate_positive_roots(cd, k_max)) index_.emplace(r.coords, r);
    }
    const RootInfo* find(const RootVector& v) const
    {
        auto it = index_.find(v);
        return it == index_.end() ? nullptr : &it->second;
    }
    const std::map<RootVector, RootInfo>& all() const { return index_; }

private:
    std::map<RootVector, RootInfo> index_;
};

} // namespace affstr
