#pragma once

// Executable separating homomorphisms into finite algebras.
//
// A Homomorphism is a finite table on the skeleton plus one closed-form rule
// per virtual family (ray, fan, forward ray), so it can be evaluated at any
// element of the infinite algebra without materialising it.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "muna/core.hpp"
#include "muna/presentation.hpp"

namespace muna {

/// value(depth) = offset + reduce(max(floor, base + slope * depth)), where
/// reduce takes the residue mod `modulus` when it is non-zero. Fan rules may
/// be restricted to a single line; other lines then map to `elsewhere`.
struct DepthRule {
    std::int64_t base = 0;
    std::int64_t slope = 0;
    std::uint64_t modulus = 0;
    std::optional<std::int64_t> floor;
    Index offset = 0;
    std::optional<std::size_t> only_line;
    Index elsewhere = 0;

    static DepthRule constant(Index value) { return affine(static_cast<std::int64_t>(value), 0, 0); }
    static DepthRule affine(std::int64_t base, std::int64_t slope, std::uint64_t modulus) {
        DepthRule r;
        r.base = base;
        r.slope = slope;
        r.modulus = modulus;
        return r;
    }

    [[nodiscard]] Index evaluate(std::uint64_t depth, std::size_t line = 0) const;
};

enum class FamilyKind : std::uint8_t { Ray, Fan, Forward };

struct FamilyKey {
    FamilyKind kind = FamilyKind::Ray;
    Index anchor = 0;
    std::size_t number = 0;  // ray number; 0 for fans and forward rays
    auto operator<=>(const FamilyKey&) const = default;
};

/// Every virtual family of p, in a fixed order.
std::vector<FamilyKey> families(const Presentation& p);

struct Homomorphism {
    FiniteAlgebra codomain;
    std::vector<Index> skeleton_map;
    std::map<FamilyKey, DepthRule> family_rules;

    /// Image of an element; throws OutOfRange for a missing table entry or rule.
    [[nodiscard]] Index at(const Element& e) const;
};

enum class SeparationKind { PointPoint, PointSubalgebra, Complete };

struct SeparationCertificate {
    Homomorphism hom;
    SeparationKind kind = SeparationKind::PointPoint;
    Element x;
    std::optional<Element> y;          // PointPoint
    std::vector<Element> generators;   // PointSubalgebra: the subalgebra they generate
    std::string construction;          // lambda | cycle | theta-sigma | component | first-arrival | z-mod
};

/// lambda_a: a |-> 1, f^-m(a) |-> m + 1, everything else |-> 0, into L_{n+1}
/// for the least n with f^-n(a) empty. Throws BackwardsEternal.
Homomorphism lambda_hom(const Presentation& p, const Element& a);

/// phi(x) = position of x's cycle entry minus its tail length, into C_k (plus
/// one extra fixpoint absorbing other components). Throws NoCycle.
Homomorphism cycle_hom(const Presentation& p, std::size_t component);

/// The element of catalog::integers() standing for the integer n.
Element integer_element(std::int64_t n);
/// n |-> n mod (|b - a| + 1) on catalog::integers(). Throws EqualPoints.
Homomorphism z_mod_hom(std::int64_t a, std::int64_t b);
SeparationCertificate z_mod_certificate(std::int64_t a, std::int64_t b);

/// A homomorphism to a finite algebra separating x from y, chosen by the case
/// analysis of the residual finiteness proof. Throws NotRF or EqualPoints.
SeparationCertificate separate_points(const Presentation& p, const Element& x, const Element& y);

/// A homomorphism with phi^-1(phi(a)) = {a}. Throws NotCS.
SeparationCertificate cs_separator(const Presentation& p, const Element& a);

/// A homomorphism with phi(a) outside phi(<generators>). Throws NotSeparable
/// when a lies in the subalgebra or p is not subalgebra separable.
SeparationCertificate separate_from_subalgebra(const Presentation& p, const Element& a,
                                               const std::vector<Element>& generators);

/// Checks the commuting condition at every node of unfold(p, depth) against
/// the true successor, then the separation claim. Throws BrokenHom or
/// SeparationFailed.
void verify(const SeparationCertificate& cert, const Presentation& p, std::uint64_t depth);

/// Steps from `from` to `to` along f, if `to` is reachable.
std::optional<std::uint64_t> steps_between(const Presentation& p, const Element& from, const Element& to);

std::string_view to_string(SeparationKind k) noexcept;

/// Text form: header, codomain edge list, skeleton map, one line per family rule.
void write_certificate(std::ostream& out, const SeparationCertificate& cert,
                       const std::function<std::string(Index)>& name = {});

}  // namespace muna
