#pragma once

#include "e8jac/poly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace e8jac {

using SparseRow = std::vector<std::pair<std::uint32_t, Rational>>;
using IntRow = std::vector<std::pair<std::uint32_t, Integer>>;
using IntVector = std::vector<Integer>;

// Homogeneous system: every row r encodes sum_j r_j u_j = 0.
struct LinearSystem {
    std::vector<std::string> unknowns;
    std::vector<SparseRow> rows;
};

// Basis of the solution space: reduced echelon over the unknown order, each
// vector primitive integral with positive leading entry.
struct SolutionSpace {
    std::size_t unknowns = 0;
    std::size_t rank = 0; // rank of the coefficient matrix
    std::vector<IntVector> basis;

    std::size_t dimension() const { return basis.size(); }
    friend bool operator==(const SolutionSpace&, const SolutionSpace&) = default;
};

// One equation per monomial appearing on either side:
// lhs coefficient - rhs coefficient = 0.
LinearSystem match_coefficients(const ParamPoly& lhs, const ParamPoly& rhs, std::vector<std::string> unknowns);

// Appends the equations of lhs = rhs to an existing system.
void append_coefficients(LinearSystem& system, const ParamPoly& lhs, const ParamPoly& rhs);

SolutionSpace nullspace(const LinearSystem& system);

// Image of the coordinate projection onto `keep` (indices into the unknown
// order, kept in the given order), re-echelonized.
SolutionSpace project(const SolutionSpace& space, const std::vector<std::uint32_t>& keep);

// Scales a rational vector to a primitive integer vector with positive
// leading entry (zero stays zero).
IntVector primitive(const std::vector<Rational>& v);
IntRow primitive_row(const SparseRow& row);

// Incremental fraction-free row echelon form over Z. Rows are kept primitive;
// the pivot of each stored row is its first nonzero column.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t columns) : columns_(columns) {}

    // Reduces the row against the current pivots; stores it and returns true
    // when it is independent of the rows seen so far.
    bool insert(IntRow row);
    bool insert(const IntVector& dense);

    // True if the row lies in the current span.
    bool contains(IntRow row) const;

    std::size_t rank() const { return pivots_.size(); }
    std::size_t columns() const { return columns_; }

    // Reduced echelon rows (zeros above every pivot), primitive with positive
    // pivot, ordered by pivot column.
    std::vector<IntRow> reduced() const;

    std::vector<std::uint32_t> pivot_columns() const;

private:
    IntRow reduce(IntRow row) const;

    std::size_t columns_;
    std::map<std::uint32_t, IntRow> pivots_;
};

IntVector to_dense(const IntRow& row, std::size_t columns);
IntRow to_sparse(const IntVector& v);

} // namespace e8jac
