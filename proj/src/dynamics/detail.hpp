#pragma once

#include "qrsk/dynamics.hpp"

#include <utility>
#include <vector>

namespace qrsk::detail {

// 1-based accessors; index 0 of a lower level stands for +infinity.
inline long at(const Signature& s, long i) { return s[std::size_t(i - 1)]; }

// Independent random choice of a displacement on particles first..last.
template <class S>
struct Block {
    long first = 1;
    long last = 0;
    std::vector<std::pair<Signature, S>> choices;
};

// Given the independent jump, a level update is a product of independent
// blocks over disjoint ranges plus a fixed displacement elsewhere.
template <class S>
struct BlockTable {
    Signature base;
    std::vector<Block<S>> blocks;
};

template <class S>
BlockTable<S> row_beta_table(const LevelUpdateContext& ctx, int v, const S& q);
template <class S>
BlockTable<S> col_beta_table(const LevelUpdateContext& ctx, int v, const S& q);

template <class S>
S evaluate_table(const BlockTable<S>& t, const Signature& lam, const Signature& nu);

Signature sample_table(const BlockTable<double>& t, const Signature& lam, Rng& rng);

// Parameters of the splitting variable W_i of the row alpha dynamics.
template <class S>
PhiParams<S> row_alpha_split(const LevelUpdateContext& ctx, long i, const S& q);

Signature sample_row_alpha(const LevelUpdateContext& ctx, double alpha, double a_j, double q, Rng& rng, long* v);
Signature sample_col_alpha(const LevelUpdateContext& ctx, double alpha, double a_j, double q, Rng& rng, long* v);
Signature sample_push_block(DynKind kind, const LevelUpdateContext& ctx, double par, double a_j, double q, Rng& rng);

} // namespace qrsk::detail
