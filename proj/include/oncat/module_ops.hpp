#pragma once

#include <cstdint>

#include "oncat/module_map.hpp"

namespace oncat {

enum class TensorVariant { Q, QInverse };

/// Slot bookkeeping for (M (x) N)^d = sum_{i+j=d} M^i (x) N^j, slots ordered
/// by ascending i, entries of a slot ordered row-major (M index major).
struct TensorLayout {
    struct Slot {
        long i, j, offset, mdim, ndim;
    };
    std::map<long, std::vector<Slot>> slots;

    const Slot* slot_at(long d, long i) const;
    long dim(long d) const;
};
TensorLayout tensor_layout(const GradedModule& M, const GradedModule& N);

/// Tensor product module; variant selects the coproduct Delta_q (default) or
/// Delta_{q^{-1}}:  d_k (x (x) y) = d_k x (x) y + q^{+-n_k deg(x)} x (x) d_k y.
ModulePtr tensor(const ModulePtr& M, const ModulePtr& N, TensorVariant variant = TensorVariant::Q);

/// f (x) g on tensor modules built with the same variant.
ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g, TensorVariant variant = TensorVariant::Q);

/// Graded dual with the S^{-1}-twisted action (d_k . f)(x) = -xi_k^{-deg x} f(d_k x);
/// the scalar twist is read off the bosonization's antipode-inverse table.
ModulePtr dual(const ModulePtr& M);

/// Internal hom realized as dual(M) (x) N.
ModulePtr internal_hom(const ModulePtr& M, const ModulePtr& N);

/// Internal hom realized directly on Hom-blocks: degree-d component
/// sum_i Hom(M^i, N^{i+d}) with action (d_k f)(v) = xi_k^{-deg v}(d_k f(v) - f(d_k v)).
ModulePtr internal_hom_blocks(const ModulePtr& M, const ModulePtr& N);

/// The canonical degree-0 isomorphism dual(M) (x) N -> internal_hom_blocks(M, N),
/// phi (x) y -> (x -> phi(x) y); verified to intertwine and to be invertible.
ModuleMap internal_hom_compatibility(const ModulePtr& M, const ModulePtr& N);

/// Basis of Hom_{H_n}^degree(M, N) = degree-`degree` maps commuting with all
/// d_k, by exact sparse elimination.
std::vector<ModuleMap> hom_space(const ModulePtr& M, const ModulePtr& N, long degree);

/// dim of the d-invariant vectors of X in a fixed degree (all d_k kill them).
long invariant_dim(const ModulePtr& X, long degree);

struct IsoSearchResult {
    std::optional<ModuleMap> iso;    // invertible degree-0 intertwiner
    bool certified_negative = false; // proven that no isomorphism exists
};

/// Graded-dimension gate, then a search for an invertible element of the
/// degree-0 hom space: basis elements, seeded random combinations, and for
/// hom spaces of dimension <= 4 a deterministic grid sweep that certifies a
/// negative via vanishing of the block-determinant polynomial.
IsoSearchResult is_isomorphic(const ModulePtr& M, const ModulePtr& N, std::uint64_t seed = 1);

/// The weak braiding Psi: tensor(V, W, Q) -> tensor(W, V, QInverse),
/// v (x) w -> q^{-deg(v) deg(w)} w (x) v; verified to intertwine.
ModuleMap braiding_iso(const ModulePtr& V, const ModulePtr& W);

/// Natural regrouping (A (x) B) (x) C -> A (x) (B (x) C) (identity on graded
/// components); verified to intertwine.
ModuleMap associator(const ModulePtr& A, const ModulePtr& B, const ModulePtr& C,
                     TensorVariant variant = TensorVariant::Q);

}  // namespace oncat
