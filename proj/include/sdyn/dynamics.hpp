#pragma once

// Desk-scale applications: translational witnesses, orbit density up to a
// degree bound, invariant-hypersurface enumeration and power-bound reports.

#include "sdyn/binding.hpp"
#include "sdyn/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdyn {

using Point = std::vector<FieldElem>;

struct Witness {
  ParamTuple w;
  Certificate check;  // theta_w == phi modulo I(V)
};
// Throws NotFound when theta_w == phi has no unique solution in the chart or
// the budget runs out (the message says which).
Witness translational_witness(const SigmaVariety& s, const GroupPresentation& p);

// a, phi(a), ..., phi^N(a); throws OrbitLeavesDomain at the first iterate
// outside the domain of phi.
std::vector<Point> orbit_points(const SigmaVariety& s, const Point& a, unsigned n);

// Rows: points; columns: the monomials evaluated there. The parallel
// version fills rows concurrently; the serial one is the reference.
linalg::Matrix evaluation_matrix(const std::vector<Exponent>& monomials, const std::vector<Point>& points);
linalg::Matrix evaluation_matrix_serial(const std::vector<Exponent>& monomials, const std::vector<Point>& points);

struct OrbitCertificate {
  Point base;
  unsigned iterations = 0;
  unsigned degree = 0;
  std::size_t slice_dim = 0;        // standard monomials of degree <= d
  std::vector<std::size_t> ranks;   // ranks[i]: rank on the first i+1 orbit points
  bool dense = false;               // dense up to degree d
  std::vector<Poly> vanishing;      // forms of degree <= d vanishing on the orbit
  std::vector<Point> orbit;
};
OrbitCertificate zdo_orbit_density(const SigmaVariety& s, const Point& a, unsigned d, unsigned n);

struct InvariantHypersurface {
  Poly p;
  Poly cofactor;
  bool verified = false;  // is_invariant_subvariety holds
  bool maximal = true;    // among the enumerated subvarieties
};

struct InvariantPoint {
  Point a;
  bool maximal = true;
};

struct DMEReport {
  unsigned degree = 0;
  unsigned cofactor_degree = 0;
  std::vector<InvariantHypersurface> hypersurfaces;
  std::vector<InvariantPoint> points;
  std::optional<RatFunc> level_function;
  std::vector<Poly> level_sets;  // distinct invariant hypersurfaces p - c q
  bool infinitely_many = false;
  bool complete = true;
  std::string verdict;  // INFINITE, FINITE-WITHIN-BOUND or INCONCLUSIVE
  std::vector<std::string> notes;
};
DMEReport dme_enumerate(const SigmaVariety& s, unsigned d, unsigned c, unsigned n_pts,
                        const SearchOptions& options = {});

struct PowerBoundReport {
  OrthogonalityProfile profile;
  unsigned bound = 0;            // dim V + 3
  unsigned autonomous_bound = 0; // 2 when autonomous, else 0
  bool verified = true;          // every reported invariant re-verified
  std::string verdict;           // PASS or INCONCLUSIVE
};
PowerBoundReport power_bound_report(const SigmaVariety& s, unsigned d, const SearchOptions& options = {});

} // namespace sdyn
