#pragma once

#include <vector>

#include "oncat/cyclotomic.hpp"

namespace oncat {

using CycVector = std::vector<CyclotomicNumber>;

/// Dense matrix over Q(zeta_N), row-major; acts on column vectors.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::shared_ptr<const CyclotomicField> field, long rows, long cols)
        : field_(std::move(field)), rows_(rows), cols_(cols),
          data_(rows * cols, CyclotomicNumber::zero(field_)) {}

    static Matrix identity(const std::shared_ptr<const CyclotomicField>& f, long n) {
        Matrix m(f, n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = CyclotomicNumber::one(f);
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const std::shared_ptr<const CyclotomicField>& field() const { return field_; }

    CyclotomicNumber& at(long r, long c) { return data_[r * cols_ + c]; }
    const CyclotomicNumber& at(long r, long c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        Matrix r(field_, rows_, o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const CyclotomicNumber& a = at(i, k);
                if (a.is_zero()) continue;
                for (long j = 0; j < o.cols_; ++j) {
                    if (o.at(k, j).is_zero()) continue;
                    r.at(i, j) += a * o.at(k, j);
                }
            }
        return r;
    }
    Matrix operator*(const CyclotomicNumber& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x *= c;
        return r;
    }

    Matrix transpose() const {
        Matrix r(field_, cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    CycVector apply(const CycVector& v) const {
        CycVector r(rows_, CyclotomicNumber::zero(field_));
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    /// Column j as a vector.
    CycVector col(long j) const {
        CycVector r(rows_, CyclotomicNumber::zero(field_));
        for (long i = 0; i < rows_; ++i) r[i] = at(i, j);
        return r;
    }

  private:
    std::shared_ptr<const CyclotomicField> field_;
    long rows_ = 0;
    long cols_ = 0;
    std::vector<CyclotomicNumber> data_;
};

}  // namespace oncat
