// The decision procedure behind the existence theorem for mu-stable sheaves:
// classify the slope class into case A/B/C, compare <v^2> against the case
// threshold (0, l^2, 2l^2), and assemble the dimension and structure verdicts
// that the encoded results support.  Everything here is arithmetic on the
// Mukai lattice; geometric input (nodal cycles) enters only through the
// surface configuration.

#pragma once

#include "enr/bigint.hpp"
#include "enr/mukai.hpp"

#include <optional>
#include <string>
#include <vector>

namespace enr {

struct SurfaceConfig {
    bool unnodal = true;
    // Case B is granted whenever its arithmetic holds (the cited
    // non-emptiness results); strict mode withholds the grant and reports
    // case A with a caveat note instead.
    bool grant_case_b = true;
    // Slope classes (r0, xi0) granted a (-2)-witness on a nodal surface.
    std::vector<std::pair<Int, NSClass>> nodal_witnesses;
    // Grant a (-2)-witness whenever the case-C arithmetic holds.
    bool nodal_all = false;

    bool nodal_minus2_exists(const Int& r0, const NSClass& xi0) const;
};

enum class CaseKind { A, B, C };

struct CaseClassification {
    CaseKind kind = CaseKind::A;
    std::optional<MukaiVector> witness; // square -1 (B) or -2 (C)
    // threshold(l) = 0, l^2 or 2 l^2
    Int threshold_unit = 0; // 0, 1 or 2
    Int threshold(const Int& l) const { return threshold_unit * l * l; }
    std::vector<std::string> notes;
};

// Requires gcd(r0, xi0) = 1, r0 > 0.
CaseClassification classify_case(const Int& r0, const NSClass& xi0, const SurfaceConfig& cfg);

struct DimValue {
    enum class Kind { Exact, UpperBound, Rigid };
    Kind kind = Kind::Exact;
    Int value = 0;

    static DimValue exact(Int v) { return {Kind::Exact, std::move(v)}; }
    static DimValue upper(Int v) { return {Kind::UpperBound, std::move(v)}; }
    static DimValue rigid() { return {Kind::Rigid, -1}; }
    bool operator==(const DimValue& o) const { return kind == o.kind && value == o.value; }
};

struct ExistenceReport {
    MukaiVector v;
    NSClass L;
    SlopeClass slope;
    CaseClassification classification;
    Int threshold = 0;
    bool mu_stable_exists = false;
    bool mu_stable_locally_free_exists = false;
    DimValue stack_dim;
    // true = asserted by the encoded results; false = asserted to fail;
    // nullopt (connected/irreducible) = outside their hypotheses.
    bool reduced = false;
    bool normal = false;
    std::optional<bool> connected;
    std::optional<bool> irreducible;
    std::vector<std::string> notes;
};

// Stack dimension of M_H(v, L)^{ss} for general H: exact <v^2> when positive,
// the isotropic table when zero, "rigid" (-1) for the case witness itself.
DimValue moduli_dim(const MukaiVector& v, const NSClass& L, const SurfaceConfig& cfg,
                    std::vector<std::string>* notes = nullptr);

// Existence + dimension + structure flags for (v, L).  Requires r_v > 0,
// <v^2> >= 0 and coords(L) == coords(xi_v).
ExistenceReport analyze(const MukaiVector& v, const NSClass& L, const SurfaceConfig& cfg);

// L == (r/2) K_X mod 2, i.e. coordinates all even and kx == r/2 mod 2.
bool l_matches_half_rank_canonical(const NSClass& L, const Int& r);

} // namespace enr
