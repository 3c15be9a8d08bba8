#include "hypenny/sequence.hpp"

#include <cmath>

#include "hypenny/errors.hpp"

namespace hypenny {

void IncrementWord::grow(std::size_t need) {
    while (digits_.size() < need) {
        int a = digits_[read_++];  // reading appends >= 2 digits, so read_ never catches up
        for (int t = 0; t < 4 - a; ++t) digits_.push_back(2);
        digits_.push_back(3);
    }
}

int IncrementWord::digit(std::size_t i) {
    grow(i + 1);
    return digits_[i];
}

long long IncrementWord::max_edges(std::uint64_t n) {
    grow(n);
    while (sums_.size() <= n) {
        sums_.push_back(sums_.back() + digits_[sums_.size() - 1]);
    }
    return sums_[n];
}

std::vector<long long> IncrementWord::max_edges_prefix(std::uint64_t n) {
    max_edges(n);
    return {sums_.begin(), sums_.begin() + static_cast<std::ptrdiff_t>(n + 1)};
}

std::uint64_t ceil_isqrt(unsigned __int128 x) {
    if (x == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    // std::sqrt on __int128 is approximate; settle with integer steps.
    while (r > 0 && static_cast<unsigned __int128>(r - 1) * (r - 1) >= x) --r;
    while (static_cast<unsigned __int128>(r) * r < x) ++r;
    return r;
}

long long closed_form_max_edges(int k, std::uint64_t n) {
    require(k >= 7, "closed_form_max_edges: the tiling needs at least 7 triangles per vertex");
    require(n >= 1, "closed_form_max_edges: need at least one vertex");
    // Radicand of the doubled expression: (k-2)(k-6)n^2 + 12(k-2)n - 4k + 12.
    // It is positive for n >= 1 and its square root is either irrational or
    // attained, so replacing sqrt by its ceiling keeps the floor intact.
    unsigned __int128 nn = n;
    unsigned __int128 rad = static_cast<unsigned __int128>((k - 2)) * (k - 6) * nn * nn +
                            static_cast<unsigned __int128>(12) * (k - 2) * nn;
    rad -= static_cast<unsigned __int128>(4 * k - 12);
    unsigned __int128 num = static_cast<unsigned __int128>(k) * nn - ceil_isqrt(rad);
    return static_cast<long long>(num / 2);
}

std::vector<FullLayer> full_layers(std::uint64_t n_max) {
    std::vector<FullLayer> out;
    // F(2k), F(2k+1) for k = 1, 2, ...
    std::uint64_t f_even = 1, f_odd = 2;
    for (;;) {
        std::uint64_t n = 7 * f_odd - 6;
        if (n > n_max) break;
        FullLayer layer;
        layer.n = n;
        layer.fib_odd = f_odd;
        layer.fib_even = f_even;
        layer.lucas = f_odd + 2 * f_even;
        layer.edges = static_cast<long long>(7 * (3 * f_odd - f_even - 3));
        out.push_back(layer);
        std::uint64_t next_even = f_even + f_odd;
        std::uint64_t next_odd = next_even + f_odd;
        f_even = next_even;
        f_odd = next_odd;
    }
    return out;
}

}  // namespace hypenny
