#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace monosob {

/// Non-negative exponents A(1..m) of the monomial weight prod |x_i|^A(i).
class ExponentTuple {
public:
    /// Throws InputError on an empty list or a negative / non-finite entry.
    explicit ExponentTuple(std::vector<double> entries);
    static ExponentTuple zeros(std::size_t m);

    std::size_t dimension() const noexcept { return entries_.size(); }
    std::span<const double> entries() const noexcept { return entries_; }
    double operator[](std::size_t i) const { return entries_.at(i); }

    double sum() const noexcept;
    std::size_t positive_count() const noexcept;
    bool is_zero() const noexcept { return positive_count() == 0; }

    /// Leading r entries, used for the trace variable block.
    ExponentTuple head(std::size_t r) const;

    bool operator==(const ExponentTuple&) const = default;

private:
    std::vector<double> entries_;
};

/// D(A) = m + sum A(i).
double effective_dimension(const ExponentTuple& a) noexcept;

/// prod |x_i|^A(i) with 0^0 = 1.
double monomial_weight(const ExponentTuple& a, std::span<const double> x);

/// q = D(B) p / (D(A) - p) for 1 <= p < D(A), D(A) > 1.
double sobolev_exponent(const ExponentTuple& a, const ExponentTuple& b, double p);

/// Inverse of the A = B exponent map: p = q D / (q + D).
double sobolev_p_of_q(double dim, double q);

/// q = D_r(B) p / (D(A) - p) with r = dim B < d = dim A.
double trace_exponent(const ExponentTuple& a, const ExponentTuple& b, double p);

/// The quadruple (A, B, p, q). `valid` is derived, never supplied.
class SobolevFour {
public:
    /// Builds the four with q fixed by the scaling relation; valid is true.
    static SobolevFour from_scaling(ExponentTuple a, ExponentTuple b, double p);
    /// Builds the four with a caller-supplied q; valid iff q matches the
    /// scaling relation to 1e-14 relative.
    static SobolevFour with_q(ExponentTuple a, ExponentTuple b, double p, double q);

    const ExponentTuple& a() const noexcept { return a_; }
    const ExponentTuple& b() const noexcept { return b_; }
    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    bool valid() const noexcept { return valid_; }

    std::string to_json() const;

private:
    SobolevFour(ExponentTuple a, ExponentTuple b, double p, double q, bool valid)
        : a_(std::move(a)), b_(std::move(b)), p_(p), q_(q), valid_(valid) {}

    ExponentTuple a_;
    ExponentTuple b_;
    double p_;
    double q_;
    bool valid_;
};

/// JSON array of numbers, 17 significant digits.
std::string to_json(const ExponentTuple& a);
/// Accepts a JSON array ("[1, 2]") or comma-separated decimals ("1,2").
ExponentTuple parse_exponent_tuple(const std::string& text);

} // namespace monosob
