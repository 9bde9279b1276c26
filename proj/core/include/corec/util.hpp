#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corec {

/// Length of the longest common subsequence of two sequences.
template <typename Seq>
std::size_t lcs_length(const Seq& a, const Seq& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) return 0;
    std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

/// 100 * 2*LCS / (|a|+|b|); 100 when both sequences are empty.
template <typename Seq>
double lcs_similarity(const Seq& a, const Seq& b) {
    if (a.empty() && b.empty()) return 100.0;
    const double l = static_cast<double>(lcs_length(a, b));
    return 100.0 * 2.0 * l / static_cast<double>(a.size() + b.size());
}

/// Collapses runs of whitespace to single spaces and trims the ends.
std::string collapse_whitespace(std::string_view s);

bool contains_ci(std::string_view haystack, std::string_view needle);

std::vector<std::string> split(std::string_view s, char sep);

/// Repository path to module path: strips a trailing ".js" and maps
/// directory separators to dots ("tools/buildmessage.js" -> "tools.buildmessage").
std::string module_path_of(std::string_view file_path);

/// SplitMix64 step; used to derive per-worker seeds deterministically.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace corec
