#include "oncat/linalg.hpp"

#include <stdexcept>

namespace oncat {

namespace {

using SparseRow = std::map<long, CyclotomicNumber>;

// Echelonize: returns pivot-col -> normalized row, rows fully reduced against
// later-found pivots is NOT guaranteed (plain echelon, not RREF).
std::map<long, SparseRow> echelonize(const SparseMatrix& A) {
    std::map<long, SparseRow> pivot_rows;
    for (const auto& raw : A.row) {
        SparseRow r = raw;
        while (!r.empty()) {
            long lead = r.begin()->first;
            auto it = pivot_rows.find(lead);
            if (it == pivot_rows.end()) break;
            CyclotomicNumber factor = r.begin()->second;  // pivot rows are normalized
            for (auto& [c, v] : it->second) {
                auto [jt, inserted] = r.try_emplace(c, CyclotomicNumber::zero(v.field()));
                jt->second -= factor * v;
                if (jt->second.is_zero()) r.erase(jt);
            }
        }
        if (r.empty()) continue;
        CyclotomicNumber inv = r.begin()->second.inverse();
        for (auto& [c, v] : r) v *= inv;
        pivot_rows.emplace(r.begin()->first, std::move(r));
    }
    return pivot_rows;
}

// Back-substitution for x with x|free = seed (unit vector at free column f or
// zeros), solving pivot coordinates from the echelon rows bottom-up.
CycVector back_substitute(const std::map<long, SparseRow>& pivot_rows, long cols,
                          const std::shared_ptr<const CyclotomicField>& field, long free_col,
                          const std::map<long, CyclotomicNumber>* rhs) {
    CycVector x(cols, CyclotomicNumber::zero(field));
    if (free_col >= 0) x[free_col] = CyclotomicNumber::one(field);
    for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
        long p = it->first;
        CyclotomicNumber acc = CyclotomicNumber::zero(field);
        for (auto& [c, v] : it->second) {
            if (c == p) continue;
            if (!x[c].is_zero()) acc += v * x[c];
        }
        if (rhs) {
            auto jt = rhs->find(p);
            if (jt != rhs->end()) acc -= jt->second;
        }
        x[p] = -acc;
    }
    return x;
}

}  // namespace

std::vector<CycVector> kernel_basis(const SparseMatrix& A,
                                    const std::shared_ptr<const CyclotomicField>& field) {
    auto pivot_rows = echelonize(A);
    std::vector<CycVector> basis;
    for (long c = 0; c < A.cols; ++c) {
        if (pivot_rows.count(c)) continue;
        basis.push_back(back_substitute(pivot_rows, A.cols, field, c, nullptr));
    }
    return basis;
}

std::optional<CycVector> solve_linear(const SparseMatrix& A, const CycVector& b,
                                      const std::shared_ptr<const CyclotomicField>& field) {
    // Eliminate [A | b] keeping the rhs in a separate column index `cols`.
    std::map<long, SparseRow> pivot_rows;
    const long bcol = A.cols;
    for (long i = 0; i < A.rows; ++i) {
        SparseRow r = A.row[i];
        if (!b[i].is_zero()) r.emplace(bcol, b[i]);
        while (!r.empty()) {
            long lead = r.begin()->first;
            if (lead == bcol) return std::nullopt;  // 0 = nonzero
            auto it = pivot_rows.find(lead);
            if (it == pivot_rows.end()) break;
            CyclotomicNumber factor = r.begin()->second;
            for (auto& [c, v] : it->second) {
                auto [jt, inserted] = r.try_emplace(c, CyclotomicNumber::zero(field));
                jt->second -= factor * v;
                if (jt->second.is_zero()) r.erase(jt);
            }
        }
        if (r.empty()) continue;
        CyclotomicNumber inv = r.begin()->second.inverse();
        for (auto& [c, v] : r) v *= inv;
        pivot_rows.emplace(r.begin()->first, std::move(r));
    }
    // Particular solution: free variables zero. A pivot row (a | beta) says
    // sum_c a_c x_c = beta, so beta enters back-substitution as the rhs.
    std::map<long, CyclotomicNumber> rhs;
    std::map<long, SparseRow> system_rows;
    for (auto& [p, row] : pivot_rows) {
        SparseRow r;
        for (auto& [c, v] : row) {
            if (c == bcol)
                rhs.emplace(p, v);
            else
                r.emplace(c, v);
        }
        system_rows.emplace(p, std::move(r));
    }
    CycVector x = back_substitute(system_rows, A.cols, field, -1, &rhs);
    return x;
}

bool RowSpace::add(const CycVector& v) {
    CycVector r = reduce(v);
    long lead = -1;
    for (long c = 0; c < width_; ++c)
        if (!r[c].is_zero()) {
            lead = c;
            break;
        }
    if (lead < 0) return false;
    CyclotomicNumber inv = r[lead].inverse();
    SparseRow row;
    for (long c = lead; c < width_; ++c) {
        CyclotomicNumber x = r[c] * inv;
        if (!x.is_zero()) row.emplace(c, x);
    }
    // Fully reduce previously stored rows against the new pivot.
    for (auto& [p, prow] : rows_) {
        auto it = prow.find(lead);
        if (it == prow.end()) continue;
        CyclotomicNumber f = it->second;
        for (auto& [c, v] : row) {
            auto [jt, inserted] = prow.try_emplace(c, CyclotomicNumber::zero(field_));
            jt->second -= f * v;
            if (jt->second.is_zero()) prow.erase(jt);
        }
    }
    rows_.emplace(lead, std::move(row));
    return true;
}

CycVector RowSpace::reduce(const CycVector& v) const {
    if (static_cast<long>(v.size()) != width_) throw std::invalid_argument("RowSpace: width mismatch");
    CycVector r = v;
    for (auto& [p, row] : rows_) {
        if (r[p].is_zero()) continue;
        CyclotomicNumber f = r[p];
        for (auto& [c, val] : row) r[c] -= f * val;
    }
    return r;
}

bool RowSpace::contains(const CycVector& v) const {
    CycVector r = reduce(v);
    for (auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

bool RowSpace::same_space(const RowSpace& o) const {
    if (dim() != o.dim() || width_ != o.width_) return false;
    for (auto& [p, row] : rows_) {
        CycVector v(width_, CyclotomicNumber::zero(field_));
        for (auto& [c, val] : row) v[c] = val;
        if (!o.contains(v)) return false;
    }
    return true;
}

std::vector<long> RowSpace::pivots() const {
    std::vector<long> p;
    for (auto& [c, row] : rows_) p.push_back(c);
    return p;
}

std::optional<Matrix> inverse_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const long n = m.rows();
    auto field = m.field();
    // Gauss-Jordan on [m | I].
    Matrix a = m;
    Matrix inv = Matrix::identity(field, n);
    for (long col = 0; col < n; ++col) {
        long pr = -1;
        for (long r = col; r < n; ++r)
            if (!a.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) return std::nullopt;
        if (pr != col) {
            for (long c = 0; c < n; ++c) {
                std::swap(a.at(pr, c), a.at(col, c));
                std::swap(inv.at(pr, c), inv.at(col, c));
            }
        }
        CyclotomicNumber piv_inv = a.at(col, col).inverse();
        for (long c = 0; c < n; ++c) {
            a.at(col, c) *= piv_inv;
            inv.at(col, c) *= piv_inv;
        }
        for (long r = 0; r < n; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            CyclotomicNumber f = a.at(r, col);
            for (long c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

long matrix_rank(const Matrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) s.add(r, c, m.at(r, c));
    return m.cols() - static_cast<long>(kernel_basis(s, m.field()).size());
}

}  // namespace oncat
