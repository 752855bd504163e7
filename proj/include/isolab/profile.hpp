#pragma once

#include <string>

#include "isolab/metric.hpp"

namespace isolab {

/// A sampled nondecreasing profile t -> value with provenance.
struct ProfileCurve {
    enum class Kind { exact, exact_connected, family_lower, family_upper };

    Kind kind = Kind::exact;
    Scaled h = 1;
    std::string provenance;                           // subset family, or "all subsets"
    std::vector<std::pair<Measure, Measure>> points;  // (t, value), t ascending
};

const char* kind_name(ProfileCurve::Kind k);
ProfileCurve::Kind kind_from_name(const std::string& name);

struct ExactProfileOptions {
    bool connected_only = false;
    Scaled gap = 0;  // 0 -> 10 * scale
    Budget budget;
};

/// Full-enumeration profile on a finite space of at most 22 vertices:
/// I(t) = min over subsets A with t <= mu(A) <= mu(X)/2 of mu(boundary_h A).
/// The half-measure cap keeps the infimum meaningful on finite spaces.
ProfileCurve exact_profile(const Space& s, Scaled h, const ExactProfileOptions& opt = {});

struct FamilyMember {
    std::string name;
    SubsetRegion region;
};
struct FamilySpec {
    std::string name;
    std::vector<FamilyMember> members;
};
enum class FamilyMode { lower, upper };

struct FamilyProfileRow {
    std::string name;
    Measure measure = 0;
    Measure boundary = 0;
};
struct FamilyProfileResult {
    ProfileCurve curve;
    std::vector<FamilyProfileRow> rows;
};

/// Profile restricted to a family: lower mode takes inf of mu(boundary) over
/// members with mu(A) >= t, upper mode sup over members with mu(A) <= t;
/// sampled at each realized member measure, never interpolated.
FamilyProfileResult family_profile(const Space& s, const FamilySpec& family, Scaled h, FamilyMode mode,
                                   const Budget& budget = {});

/// Value of a sampled profile at t, if defined there.
std::optional<Measure> profile_value_at(const ProfileCurve& c, Measure t);

/// Like profile_value_at, but a requested t with no qualifying member is an
/// EmptyAtT error rather than a fabricated value.
Measure profile_value_checked(const ProfileCurve& c, Measure t);

/// Right inverse of a growth curve: phi(t) = least sampled r with V(r) >= t.
struct PhiCurve {
    std::vector<std::pair<Scaled, Measure>> growth;  // (r, V(r)) ascending
    std::vector<std::pair<Measure, Scaled>> points;  // (t, phi(t)) at realized volumes
    Measure max_volume = 0;

    Scaled eval(Measure t) const;  // throws OutOfRange above max_volume
};

PhiCurve phi_from_growth(const GrowthCurve& g);

/// Monotone sampled curve with exact rational values, the common currency of
/// the comparison calculus.
struct Curve {
    std::vector<std::pair<std::int64_t, Rational>> points;  // t ascending
};

Curve to_curve(const ProfileCurve& p);
Curve to_curve(const GrowthCurve& g);
/// floor(sqrt(t)) sampled at the given points.
Curve sqrt_curve(std::span<const std::int64_t> ts);
/// t / phi(t) sampled at the given points; samples above the growth range are skipped.
Curve id_over_phi_curve(const PhiCurve& phi, std::span<const std::int64_t> ts);

struct CompareGrid {
    std::vector<std::int64_t> constants;  // ascending candidate values for C1 and C2

    static CompareGrid powers(int max_exp) {
        CompareGrid g;
        for (int e = 0; e <= max_exp; ++e) g.constants.push_back(std::int64_t{1} << e);
        return g;
    }
};

/// Constants (C1..C4) and a verified range certifying a curve relation, or a
/// counterexample point. Refutation is always relative to the grid and range.
struct ComparisonWitness {
    enum class Relation { dominates, equivalent, refuted };

    Relation relation = Relation::refuted;
    std::int64_t c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    std::int64_t t_min = 0, t_max = 0;
    std::optional<std::int64_t> counterexample;
    std::string note;

    bool holds() const { return relation != Relation::refuted; }
};

const char* relation_name(ComparisonWitness::Relation r);

/// Searches the grid for the cheapest (C1, C2) with f(t) <= C1 * g(C2 * t) at
/// every eligible sampled t of f; g is evaluated by monotone step (floor)
/// interpolation, clamped at its top sample, which only under-estimates g.
ComparisonWitness compare(const Curve& f, const Curve& g, const CompareGrid& grid = CompareGrid::powers(10));

/// Both directions of compare; equivalent iff both dominate.
ComparisonWitness compare_equivalent(const Curve& f, const Curve& g,
                                     const CompareGrid& grid = CompareGrid::powers(10));

/// Witness for profile >= t/phi(t) (the strong isoperimetric inequality) via
/// compare(t/phi, profile). For family-restricted profiles this certifies the
/// family side only.
ComparisonWitness strong_profile_check(const ProfileCurve& profile, const GrowthCurve& growth,
                                       const CompareGrid& grid = CompareGrid::powers(10));

struct AnnulusReport {
    VertexId center;
    Scaled r = 0;
    Measure ball_measure = 0;
    Scaled best_annulus_r2 = 0;
    Measure best_annulus_measure = 0;
    Rational annulus_ratio{0, 1};  // mu(C_{r'-S, r'}) * r / (mu(B(x,r)) * S)
    Scaled best_sphere_r2 = 0;
    Measure best_sphere_measure = 0;
    Rational sphere_ratio{0, 1};  // mu(boundary_S B(x,r')) * r / (mu(B(x,r)) * S)
};

/// Sweeps r' in [r+S, 2r] for the smallest unit-width annulus around x, and
/// r' in [r, 2r] for the smallest sphere boundary; ratios are normalized to
/// true length units.
AnnulusReport annulus_inf_check(const Space& s, const VertexId& x, Scaled r, const Budget& budget = {});

}  // namespace isolab
