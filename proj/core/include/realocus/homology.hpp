#pragma once

#include "realocus/coding.hpp"

#include <optional>
#include <string>
#include <vector>

namespace realocus {

/* (c:d) in P^1(Z/N), N prime. Canonical: d = 1 with c in C(N), or (1:0). */
struct MSymbol {
    Int c, d;
    friend bool operator==(const MSymbol&, const MSymbol&) = default;
};

MSymbol msymbol(long N, const Int& c, const Int& d);
std::string str(const MSymbol& s);
std::string str(const std::vector<MSymbol>& sum); // "(r:1) + (s:1)", "0" when empty

/* (r_n:1) with r_n = -(M_n)_22 in C(N), for the hyperbolic rows 0..rows-1. */
std::vector<MSymbol> component_class(const NCycle& c, std::size_t rows);
std::vector<MSymbol> component_class(const Component& comp);

long genus_x0(long N);

using RatVector = std::vector<Rat>;

/* H_1(X_0(N), Q) from Manin symbols: generators, relations and the cuspidal kernel. */
class ManinBasis {
public:
    explicit ManinBasis(long N);

    long level() const { return N_; }
    std::size_t dimension() const { return kernel_.size(); }
    std::size_t generator_count() const { return gens_.size(); }
    const std::vector<MSymbol>& generators() const { return gens_; }
    std::size_t quotient_dimension() const { return free_.size(); }

    /* Image of a symbol in the relation quotient. */
    RatVector quotient_image(const MSymbol& s) const;
    /* Boundary of a quotient vector: coefficients of the cusps (oo, 0). */
    std::pair<Rat, Rat> boundary(const RatVector& v) const;
    /* Coordinates of a cycle in the cuspidal basis; throws unless the boundary vanishes. */
    RatVector coordinates(const RatVector& v) const;

    /* Generators are indexed (c:1) -> c mod N, (1:0) -> N, in the Gamma_0(N) picture. */
    std::size_t index(const MSymbol& gamma0_symbol) const;

private:
    long N_;
    std::vector<MSymbol> gens_;
    std::vector<std::size_t> free_;          // free columns of the relation echelon form
    std::vector<RatVector> image_;           // generator -> quotient vector
    std::vector<std::size_t> kernel_cols_;   // free columns of the boundary echelon form
    std::vector<RatVector> kernel_;          // cuspidal basis in quotient coordinates
};

/* Class of a sum of (r:1) symbols written for Gamma^0(N); moved to Gamma_0(N) by conjugation with S. */
RatVector class_vector(const std::vector<MSymbol>& symbols, const ManinBasis& basis);

std::size_t rank_of(std::vector<RatVector> rows);
long component_rank(long N);

/* A path piece; a missing endpoint is the cusp i*oo. */
struct Segment {
    std::optional<HPoint> from, to;
};

struct MCycle {
    int kind; // 1: through i + s, 2: split at P
    Int s, s_prime;
    IntMatrix m;              // integral matrix of M_s (times sqrt2 in the first case)
    Form image;               // M_s o Q
    std::optional<HPoint> p, mp; // P and M_s P in the second case
    std::vector<Segment> segments;
    std::vector<MSymbol> homologous; // empty when nullhomologous
};

MCycle m_cycle(long N, const Form& q, const Int& s);

} // namespace realocus
