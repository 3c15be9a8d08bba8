#pragma once

// Combinatorics of maximum edge counts for packings at the order-7 tiling
// side length.
//
// The increments e(n+1) - e(n) of the maximum edge count form an infinite
// word over {0,1,2,3} generated from the seed 012 by a FIFO substitution:
// digits are consumed from the front, and consuming a appends (4-a) copies
// of 2 followed by one 3.  e(n) is the sum of the first n digits.

#include <cstdint>
#include <vector>

namespace hypenny {

class IncrementWord {
public:
    int digit(std::size_t i);

    // Maximum edge count on n vertices: sum of the first n digits.
    long long max_edges(std::uint64_t n);

    // All of max_edges(0..n) in one pass; [k] holds max_edges(k).
    std::vector<long long> max_edges_prefix(std::uint64_t n);

private:
    void grow(std::size_t need);

    std::vector<std::uint8_t> digits_{0, 1, 2};
    std::size_t read_ = 0;
    std::vector<long long> sums_{0};  // sums_[i] = sum of first i digits
};

// Smallest integer whose square is >= x.
std::uint64_t ceil_isqrt(unsigned __int128 x);

// Rounded closed form floor((k*n - sqrt((k-2)(k-6)n^2 + 12(k-2)n - 4k + 12))/2)
// for the maximum edge count of n disks at the order-k tiling side length,
// evaluated in exact integer arithmetic.  Requires k >= 7, n >= 1.
long long closed_form_max_edges(int k, std::uint64_t n);

inline long long closed_form_max_edges7(std::uint64_t n) {
    return closed_form_max_edges(7, n);
}

// Vertex counts at which the order-7 construction completes a full layer.
// At those n the closed form is attained with a perfect-square radicand.
struct FullLayer {
    std::uint64_t n;        // 7*F(2k+1) - 6
    long long edges;        // 7*(3*F(2k+1) - F(2k) - 3)
    std::uint64_t fib_odd;  // F(2k+1)
    std::uint64_t fib_even; // F(2k)
    std::uint64_t lucas;    // L(2k+1)
};

std::vector<FullLayer> full_layers(std::uint64_t n_max);

}  // namespace hypenny
