#pragma once

#include "realocus/arith.hpp"

#include <optional>
#include <utility>

namespace realocus {

/* A X^2 + B XY + C Y^2 */
struct Form {
    Int a, b, c;
    friend bool operator==(const Form&, const Form&) = default;
};

Int disc(const Form& q);
Int content(const Form& q);
Form primitive(const Form& q); // positive content divided out
Form negate(const Form& q);
Int inner(const Form& p, const Form& q);
std::string str(const Form& q);

/* sigma_M Q = (Q o adj M) / det M, for det M = +-1. */
Form act(const IntMatrix& m, const Form& q);
/* Q o adj M without the determinant scaling. */
Form act_unscaled(const IntMatrix& m, const Form& q);
/* QuadMatrix action; the result must be integral. */
Form act_quad(const QuadMatrix& m, const Form& q);

/* Oriented geodesic from alpha to beta. A = 0 puts one end at i*oo. */
struct Geodesic {
    std::optional<QuadNum> alpha, beta; // nullopt = i*oo
};

Geodesic geodesic(const Form& q);
HPoint tip_point(const Form& q);
Form tip(const Form& q);
/* Positive definite primitive form whose root in H is z; z must be quadratic imaginary. */
Form point_form(const HPoint& z);
Rat center(const Form& q);          // -B/2A
Rat radius2(const Form& q);         // D/4A^2
bool on_geodesic(const Form& q, const HPoint& z);

/* Intersection number of gamma_p and gamma_q, 0 when disjoint, equal or tangent. */
int intersection_number(const Form& p, const Form& q);
/* I(gamma_q, sigma-bar) = 1 for the closed arc from rho_{-1} to rho_{+1}. */
bool crosses_sigma_bar(const Form& q);
/* gamma_q passes through rho_a = a/2 + i sqrt3/2. */
bool through_rho(const Form& q, int a);

bool meets_f_interior(const Form& q);
bool meets_f_closed(const Form& q);

bool is_reduced_indefinite(const Form& q);
bool is_nearly_reduced(const Form& q);

/* Closed interval [lo, hi] of reals t with T^t gamma crossing sigma. */
struct Interval {
    QuadNum lo, hi;
};
Interval j_interval(const Form& q);

/* (reduced form, delta) with reduced = T^delta o q */
std::pair<Form, Int> normalize(const Form& q);

/* Gauss reduction of a positive definite form; act(m, p) = result. */
std::pair<Form, IntMatrix> reduce_definite(const Form& p);

/* Translate by T^t. */
Form translate(const Form& q, const Int& t);

} // namespace realocus
