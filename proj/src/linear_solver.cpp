#include "e8jac/linear_solver.hpp"

#include <unordered_map>

namespace e8jac {

namespace {

void make_primitive(IntRow& row)
{
    if (row.empty())
        return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            break;
    }
    if (sgn(row.front().second) < 0)
        g = -g;
    if (g != 1)
        for (auto& [c, v] : row)
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// row <- a*row - b*pivot, where a, b cancel the entry at the pivot column.
IntRow eliminate(const IntRow& row, const IntRow& pivot, const Integer& row_entry)
{
    const Integer& lead = pivot.front().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), lead.get_mpz_t(), row_entry.get_mpz_t());
    Integer a = lead / g;
    Integer b = row_entry / g;
    IntRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, a * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -b * pivot[j].second);
            ++j;
        } else {
            Integer v = a * row[i].second - b * pivot[j].second;
            if (sgn(v) != 0)
                out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

} // namespace

IntRow primitive_row(const SparseRow& row)
{
    Integer l = 1;
    for (const auto& [c, v] : row)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    IntRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) {
        if (sgn(v) == 0)
            continue;
        Integer x = l / v.get_den() * v.get_num();
        out.emplace_back(c, std::move(x));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    make_primitive(out);
    return out;
}

IntVector primitive(const std::vector<Rational>& v)
{
    SparseRow row;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            row.emplace_back(std::uint32_t(i), v[i]);
    return to_dense(primitive_row(row), v.size());
}

IntVector to_dense(const IntRow& row, std::size_t columns)
{
    IntVector v(columns, 0);
    for (const auto& [c, x] : row)
        v.at(c) = x;
    return v;
}

IntRow to_sparse(const IntVector& v)
{
    IntRow row;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            row.emplace_back(std::uint32_t(i), v[i]);
    return row;
}

IntRow RowEchelon::reduce(IntRow row) const
{
    // Entries introduced by a pivot row lie right of its pivot, so a single
    // left-to-right sweep over pivot columns suffices.
    std::size_t pos = 0;
    while (pos < row.size()) {
        auto it = pivots_.find(row[pos].first);
        if (it == pivots_.end()) {
            ++pos;
            continue;
        }
        std::uint32_t col = row[pos].first;
        row = eliminate(row, it->second, row[pos].second);
        pos = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::uint32_t c) { return e.first < c; }) -
              row.begin();
    }
    return row;
}

bool RowEchelon::insert(IntRow row)
{
    for (const auto& [c, v] : row)
        if (c >= columns_)
            throw std::out_of_range("RowEchelon: column out of range");
    make_primitive(row);
    row = reduce(std::move(row));
    if (row.empty())
        return false;
    std::uint32_t col = row.front().first;
    pivots_.emplace(col, std::move(row));
    return true;
}

bool RowEchelon::insert(const IntVector& dense)
{
    return insert(to_sparse(dense));
}

bool RowEchelon::contains(IntRow row) const
{
    make_primitive(row);
    return reduce(std::move(row)).empty();
}

std::vector<std::uint32_t> RowEchelon::pivot_columns() const
{
    std::vector<std::uint32_t> cols;
    for (const auto& [c, r] : pivots_)
        cols.push_back(c);
    return cols;
}

std::vector<IntRow> RowEchelon::reduced() const
{
    std::vector<IntRow> rows;
    for (const auto& [c, r] : pivots_)
        rows.push_back(r);
    // Back substitution from the last pivot upwards.
    for (std::size_t p = rows.size(); p-- > 0;) {
        std::uint32_t col = rows[p].front().first;
        for (std::size_t i = 0; i < p; ++i) {
            auto it = std::lower_bound(rows[i].begin(), rows[i].end(), col,
                                       [](const auto& e, std::uint32_t c) { return e.first < c; });
            if (it != rows[i].end() && it->first == col)
                rows[i] = eliminate(rows[i], rows[p], it->second);
        }
    }
    return rows;
}

LinearSystem match_coefficients(const ParamPoly& lhs, const ParamPoly& rhs, std::vector<std::string> unknowns)
{
    LinearSystem system;
    system.unknowns = std::move(unknowns);
    append_coefficients(system, lhs, rhs);
    return system;
}

void append_coefficients(LinearSystem& system, const ParamPoly& lhs, const ParamPoly& rhs)
{
    ParamPoly::require_same_alphabet(lhs, rhs);
    if (!lhs.is_zero() && !rhs.is_zero() && lhs.bidegree() != rhs.bidegree())
        throw AlgebraError("match_coefficients: bidegree mismatch");
    ParamPoly diff = ParamPoly::sum_unchecked(lhs, rhs, Rational(-1));
    // Monomials where both sides cancel identically still give the trivial
    // equation 0 = 0, which carries no information and is omitted.
    for (const auto& t : diff.terms()) {
        SparseRow row;
        for (const auto& [id, c] : t.coeff.entries()) {
            if (id >= system.unknowns.size())
                throw AlgebraError("match_coefficients: unknown id out of range");
            row.emplace_back(id, c);
        }
        system.rows.push_back(std::move(row));
    }
}

SolutionSpace nullspace(const LinearSystem& system)
{
    const std::size_t n = system.unknowns.size();
    RowEchelon echelon(n);
    for (const auto& row : system.rows)
        echelon.insert(primitive_row(row));
    auto rows = echelon.reduced();

    std::vector<bool> is_pivot(n, false);
    for (const auto& r : rows)
        is_pivot[r.front().first] = true;

    RowEchelon basis(n);
    for (std::uint32_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(n, 0);
        v[f] = 1;
        for (const auto& r : rows) {
            auto it = std::lower_bound(r.begin(), r.end(), f, [](const auto& e, std::uint32_t c) { return e.first < c; });
            if (it != r.end() && it->first == f)
                v[r.front().first] = -Rational(it->second) / Rational(r.front().second);
        }
        basis.insert(to_sparse(primitive(v)));
    }
    SolutionSpace out;
    out.unknowns = n;
    out.rank = rows.size();
    for (const auto& r : basis.reduced())
        out.basis.push_back(to_dense(r, n));
    return out;
}

SolutionSpace project(const SolutionSpace& space, const std::vector<std::uint32_t>& keep)
{
    RowEchelon echelon(keep.size());
    for (const auto& v : space.basis) {
        IntRow row;
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (sgn(v.at(keep[i])) != 0)
                row.emplace_back(std::uint32_t(i), v[keep[i]]);
        echelon.insert(std::move(row));
    }
    SolutionSpace out;
    out.unknowns = keep.size();
    out.rank = keep.size() - echelon.rank();
    for (const auto& r : echelon.reduced())
        out.basis.push_back(to_dense(r, keep.size()));
    return out;
}

} // namespace e8jac
