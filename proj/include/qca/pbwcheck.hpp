#pragma once

#include "qca/presentation.hpp"

#include <vector>

namespace qca {

// Multidegree gamma in the simple roots, level sum s, letters x_{i,t} with t <= T.
struct GradedSlice {
    int n = 2;
    std::vector<int> gamma;
    int s = 0;
    int T = 0;
};

// Positive root alpha_{i,j} = alpha_i + ... + alpha_{j-1}, 1 <= i < j <= n.
struct PositiveRoot {
    int i, j;
};

std::vector<PositiveRoot> positive_roots(int n);

// Words in the letters X^+_{i,t} lying in the slice, in lexicographic order.
std::vector<Word> slice_words(const GradedSlice& slice);

struct SliceReport {
    GradedSlice slice;
    int words = 0;
    int ideal_rank = 0;
    int dim = 0;
    long pbw_count = 0;
    bool match = false;
};

// dim of the slice of the free algebra modulo the two-sided ideal of (Q2), (Q7)
int graded_dim_uplus(const GradedSlice& slice);
SliceReport slice_report(const GradedSlice& slice);
// number of functions h on (positive root, level <= T) with weight gamma and level sum s
long pbw_count(const GradedSlice& slice);

struct PBWReport {
    std::vector<SliceReport> slices;
    int mismatches = 0;
    bool ok() const { return mismatches == 0; }
};

// every gamma with entries 0..maxmult and every s = 0..maxs
PBWReport pbw_verify(int n, int maxmult, int maxs, int T);

}  // namespace qca
