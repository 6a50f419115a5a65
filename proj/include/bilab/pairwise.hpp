#ifndef BILAB_PAIRWISE_HPP
#define BILAB_PAIRWISE_HPP

#include <cstddef>
#include <span>

namespace bilab {

// Deterministic pairwise (cascade) summation.  The reduction tree depends
// only on the element count, never on thread schedule, so repeated runs
// produce bit-identical results.  Blocks of <= 8 are summed sequentially.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
    const std::size_t m = xs.size();
    if (m == 0) return T{};
    if (m <= 8) {
        T acc = xs[0];
        for (std::size_t i = 1; i < m; ++i) acc += xs[i];
        return acc;
    }
    const std::size_t half = m / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const T* data, std::size_t m) {
    return pairwise_sum(std::span<const T>(data, m));
}

// Pairwise sum of f(i) for i in [0, m).  Materializing the terms would cost
// memory in hot loops; this recursion keeps the same tree as pairwise_sum.
template <typename T, typename F>
T pairwise_sum_indexed(std::size_t lo, std::size_t hi, F&& f) {
    const std::size_t m = hi - lo;
    if (m == 0) return T{};
    if (m <= 8) {
        T acc = f(lo);
        for (std::size_t i = lo + 1; i < hi; ++i) acc += f(i);
        return acc;
    }
    const std::size_t mid = lo + m / 2;
    return pairwise_sum_indexed<T>(lo, mid, f) + pairwise_sum_indexed<T>(mid, hi, f);
}

} // namespace bilab

#endif
