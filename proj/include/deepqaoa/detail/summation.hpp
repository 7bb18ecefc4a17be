#ifndef DEEPQAOA_DETAIL_SUMMATION_HPP_
#define DEEPQAOA_DETAIL_SUMMATION_HPP_

#include <cstddef>

namespace deepqaoa::detail {

// Fixed-shape pairwise reduction of term(0..n-1). The tree depends only on n, so results are
// reproducible regardless of how callers schedule work.
template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
    constexpr std::size_t kLeaf = 64;
    if (end - begin <= kLeaf) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += term(i);
        return s;
    }
    std::size_t mid = begin + (end - begin) / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

template <class Term>
double pairwise_sum(std::size_t n, const Term& term) {
    return pairwise_sum(std::size_t{0}, n, term);
}

}  // namespace deepqaoa::detail

#endif  // DEEPQAOA_DETAIL_SUMMATION_HPP_
