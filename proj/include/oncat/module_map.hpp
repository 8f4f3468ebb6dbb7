#pragma once

#include "oncat/graded_module.hpp"

namespace oncat {

/// Shape of the graded hom space Hom^degree(src, dst): the degrees carrying a
/// nonzero block, with offsets into a flat coordinate vector (degree
/// ascending, blocks row-major).
struct HomShape {
    struct Piece {
        long i;       // source degree
        long rows;    // dst dim at i + degree
        long cols;    // src dim at i
        long offset;  // into the flat coordinate vector
    };
    std::vector<Piece> pieces;
    long total = 0;

    HomShape(const GradedModule& src, const GradedModule& dst, long degree);
    const Piece* piece_at(long i) const;
};

/// Graded linear map of fixed degree between modules over one structure,
/// stored as per-degree blocks f_i : src^i -> dst^{i+degree}. Blocks that are
/// absent are zero.
class ModuleMap {
  public:
    ModuleMap(ModulePtr src, ModulePtr dst, long degree);
    static ModuleMap identity(const ModulePtr& m);

    const ModulePtr& source() const { return src_; }
    const ModulePtr& target() const { return dst_; }
    long degree() const { return degree_; }

    /// Block accessor; nullptr means zero (or out of shape).
    const Matrix* block(long i) const;
    void set_block(long i, Matrix m);

    CycVector apply(long i, const CycVector& v) const;

    ModuleMap compose(const ModuleMap& inner) const;  // *this after inner
    ModuleMap operator+(const ModuleMap& o) const;
    ModuleMap operator-(const ModuleMap& o) const;
    ModuleMap scaled(const CyclotomicNumber& c) const;
    bool is_zero() const;
    bool operator==(const ModuleMap& o) const;

    /// f d_k = d_k f, blockwise, for all k.
    bool is_intertwiner() const;

    /// Degreewise-invertible test; returns the inverse when it exists.
    std::optional<ModuleMap> inverse() const;

    /// Flat coordinates in the HomShape(src, dst, degree) layout.
    CycVector to_coords() const;
    static ModuleMap from_coords(const ModulePtr& src, const ModulePtr& dst, long degree,
                                 const CycVector& coords);

  private:
    ModulePtr src_;
    ModulePtr dst_;
    long degree_;
    std::map<long, Matrix> blocks_;
};

}  // namespace oncat
