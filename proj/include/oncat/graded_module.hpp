#pragma once

#include <map>
#include <memory>
#include <stdexcept>

#include "oncat/linalg.hpp"
#include "oncat/structure.hpp"

namespace oncat {

class GradedModule;
using ModulePtr = std::shared_ptr<const GradedModule>;
class ModuleMap;

class ValidationError : public std::runtime_error {
  public:
    enum class Kind {
        ShapeMismatch,
        NilpotencyViolation,
        CommutationViolation,
        StructureMismatch,
        NonHomogeneous,
    };
    ValidationError(Kind kind, const std::string& msg, int k = -1, int l = -1, long degree = 0)
        : std::runtime_error(msg), kind(kind), k(k), l(l), degree(degree) {}
    Kind kind;
    int k;
    int l;
    long degree;
};

/// Unvalidated module data: dimensions per degree and, per prime index k,
/// action blocks d_k : M^i -> M^{i+n_k}.
struct RawModule {
    StructurePtr structure;
    std::map<long, long> dims;
    std::vector<std::map<long, Matrix>> actions;  // [k][from_degree]
};

/// Finite-dimensional Z-graded H_n-module: commuting action maps d_k with
/// d_k^{p_k} = 0, raising degree by n_k. Immutable after validation.
class GradedModule {
  public:
    /// Checks shapes, the presence of every block whose source and target
    /// dimensions are both nonzero, nilpotency d_k^{p_k} = 0, and pairwise
    /// commutation. Throws ValidationError naming the offending k, l, degree.
    static ModulePtr validate(RawModule raw);

    const StructurePtr& structure() const { return structure_; }
    long dim(long degree) const {
        auto it = dims_.find(degree);
        return it == dims_.end() ? 0 : it->second;
    }
    const std::map<long, long>& dims() const { return dims_; }
    std::vector<long> degrees() const;
    long total_dim() const;
    bool is_zero_module() const { return dims_.empty(); }
    LaurentPolynomial graded_dim() const;

    bool has_action(int k, long i) const {
        return actions_[k].count(i) > 0;
    }
    /// The block d_k : M^i -> M^{i+n_k}; only valid when has_action(k, i).
    const Matrix& action(int k, long i) const { return actions_[k].at(i); }
    /// d_k applied to a vector in M^i (empty result if the target is 0-dim).
    CycVector apply(int k, long i, const CycVector& v) const;
    /// Composite operator d_1^{a_1} ... d_t^{a_t} (a packed PBW index) from
    /// degree i, as a dense matrix; empty target gives a 0 x dim(i) matrix.
    Matrix monomial_operator(long a_idx, long i) const;

  private:
    GradedModule() = default;
    StructurePtr structure_;
    std::map<long, long> dims_;
    std::vector<std::map<long, Matrix>> actions_;
};

// --- standard modules ------------------------------------------------------

/// One-dimensional trivial module k{b}: generator in degree -b, zero actions.
ModulePtr trivial_module(const StructurePtr& s, long shift = 0);
/// Free rank-one module H_n{b} (the left regular representation, shifted).
ModulePtr free_module(const StructurePtr& s, long shift = 0);
/// String module V_k{b}: p_k-dimensional, d_k acts by identity arrows along
/// degrees -b, -b + n_k, ..., -b + (p_k - 1) n_k; other d_l act by zero.
ModulePtr string_module(const StructurePtr& s, int k, long shift = 0);

/// The three two-prime example modules (require 6 | n; the degree unit is
/// n/6) and the three-prime example (requires 30 | n).
ModulePtr example_module_V(const StructurePtr& s);
ModulePtr example_module_Vprime(const StructurePtr& s);
ModulePtr example_module_Vdoubleprime(const StructurePtr& s);
ModulePtr example_module_three_primes(const StructurePtr& s);

// --- elementary constructions ----------------------------------------------

/// (shift(M, b))^i = M^{i+b}.
ModulePtr shift_module(const ModulePtr& M, long b);
ModulePtr direct_sum(const ModulePtr& M, const ModulePtr& N);

/// Submodule generated by homogeneous vectors, with its inclusion map.
struct Submodule {
    ModulePtr module;
    std::shared_ptr<const ModuleMap> inclusion;  // module -> ambient, degree 0
};
Submodule submodule(const ModulePtr& M, const std::vector<std::pair<long, CycVector>>& generators);

/// Quotient by a submodule, with the projection map. The quotient basis is
/// the set of non-pivot ambient coordinates per degree (identity-order
/// pivoting for determinism).
struct QuotientModule {
    ModulePtr module;
    std::shared_ptr<const ModuleMap> projection;  // ambient -> module, degree 0
};
QuotientModule quotient(const ModulePtr& M, const Submodule& S);

void check_same_structure(const GradedModule& a, const GradedModule& b);

}  // namespace oncat
