#pragma once

#include <map>
#include <optional>

#include "oncat/matrix.hpp"

namespace oncat {

/// Sparse row-oriented matrix over Q(zeta_N) for exact elimination.
struct SparseMatrix {
    long rows = 0;
    long cols = 0;
    std::vector<std::map<long, CyclotomicNumber>> row;

    SparseMatrix(long r, long c) : rows(r), cols(c), row(r) {}
    void add(long r, long c, const CyclotomicNumber& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = row[r].try_emplace(c, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) row[r].erase(it);
        }
    }
};

/// Basis of the right kernel {x : A x = 0}, as dense coordinate vectors.
std::vector<CycVector> kernel_basis(const SparseMatrix& A,
                                    const std::shared_ptr<const CyclotomicField>& field);

/// One solution of A x = b, if consistent.
std::optional<CycVector> solve_linear(const SparseMatrix& A, const CycVector& b,
                                      const std::shared_ptr<const CyclotomicField>& field);

/// Incremental row-echelon span with exact membership tests. Vectors are
/// reduced against stored pivot rows; pivots are normalized to 1.
class RowSpace {
  public:
    explicit RowSpace(std::shared_ptr<const CyclotomicField> field, long width)
        : field_(std::move(field)), width_(width) {}

    /// Returns true if v enlarged the span.
    bool add(const CycVector& v);
    bool contains(const CycVector& v) const;
    long dim() const { return static_cast<long>(rows_.size()); }
    long width() const { return width_; }
    bool same_space(const RowSpace& o) const;
    /// Pivot coordinates in increasing order.
    std::vector<long> pivots() const;
    /// Residue of v after elimination (zero iff contained).
    CycVector reduce(const CycVector& v) const;
    /// Echelon basis rows (pivot-normalized, fully reduced).
    const std::map<long, std::map<long, CyclotomicNumber>>& rows() const { return rows_; }

  private:
    std::shared_ptr<const CyclotomicField> field_;
    long width_;
    std::map<long, std::map<long, CyclotomicNumber>> rows_;  // pivot col -> row
};

/// Dense inverse; nullopt when singular.
std::optional<Matrix> inverse_matrix(const Matrix& m);

long matrix_rank(const Matrix& m);

}  // namespace oncat
