#pragma once

// Binding groups of isotrivial sigma-varieties from a supplied
// trivialization: pair parameters, transport, the group law on a chart of
// the quotient, rho, the H_lambda cut and the action theta.

#include "sdyn/certificate.hpp"
#include "sdyn/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdyn {

using ParamTuple = std::vector<FieldElem>;

// g : V x Z -> Y over Z and its inverse f. The source of g lists the
// variables of V first, then those of Z; Y lists the fibre coordinates first,
// then the Z coordinates.
struct Trivialization {
  SigmaVariety s;  // (V, phi)
  SigmaVariety z;  // (Z, psi)
  AffineVariety y;
  RationalMap g;
  RationalMap f;

  std::size_t dim_v() const { return s.vars().size(); }
  std::size_t dim_z() const { return z.vars().size(); }
  std::size_t fibre_dim() const { return y.vars().size() - dim_z(); }
};

struct GroupParam {
  ParamTuple e, e2;  // the pair (e, e')
  int sigma_power = 0;  // the family is read through sigma^power
};

// Fresh coefficient symbols standing for a generic point of Z.
ParamTuple generic_param(const Trivialization& t, const std::string& base, std::set<std::string>& taken);
std::set<std::string> reserved_names(const Trivialization& t);

struct TrivializationReport {
  std::vector<Certificate> checks;
  bool ok() const { return all_ok(checks); }
};
TrivializationReport verify_trivialization(const Trivialization& t);

struct CanonicalParameter {
  std::vector<RatFunc> components;  // g_e : V -> A^l
  std::vector<FieldElem> coefficients;
};
// Throws FibreUndefined when e lies outside the family's domain.
CanonicalParameter canonical_parameter(const Trivialization& t, const ParamTuple& e, int sigma_power = 0);
// g_v == g_u forces v = u for generic u.
Certificate canonical_check(const Trivialization& t);

// f_{e'} o g_e; throws FibreMismatch when the fibres differ.
std::vector<RatFunc> theta_of(const Trivialization& t, const GroupParam& w);
bool params_equivalent(const Trivialization& t, const GroupParam& a, const GroupParam& b);

// The v with f_v o g_u == theta_w; throws NotInH0 when none exists.
ParamTuple transport(const Trivialization& t, const GroupParam& w, const ParamTuple& u);

GroupParam group_invert(const GroupParam& w);
// (inv(w2) u, w1 u) for a fresh generic u.
GroupParam group_multiply(const Trivialization& t, const GroupParam& w1, const GroupParam& w2);
// (psi(e), psi(e')) read in the sigma-transformed family.
GroupParam rho(const Trivialization& t, const GroupParam& w);

Certificate verify_intertwining(const Trivialization& t);

// lambda(wu) == lambda(u) for generic u.
bool h_lambda_filter(const Trivialization& t, const GroupParam& w, const RatFunc& lambda);

struct GroupPresentation {
  Vars w;                   // chart coordinates
  IdealRep w_ideal;         // closure of the chart
  std::vector<std::pair<Poly, Poly>> theta;  // theta(w, x) as num/den over V, coefficients in w
  Vars v;                   // variables of V
  ParamTuple identity;
  Vars w1, w2;              // argument names for the maps below
  ParamTuple multiply;      // over w1, w2
  ParamTuple inverse;       // over w1
  ParamTuple rho;           // over w1
  std::vector<RatFunc> lambdas;  // invariants on (Z, psi) used for the cut
  IdealRep h_ideal;         // H inside the chart, over w
  int h_dimension = 0;
  bool h_trivial = false;   // H is the identity alone
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;
  DifferenceField field;

  std::vector<RatFunc> theta_at(const ParamTuple& a) const;
  bool ok() const { return all_ok(certificates); }
};

// Throws PresentationIncomplete when a required solve has no unique solution.
GroupPresentation build_presentation(const Trivialization& t, const std::vector<RatFunc>& lambdas);
// Lambda = degree-bounded rational invariants of (Z, psi) plus `extra`.
GroupPresentation build_presentation(const Trivialization& t, unsigned lambda_degree,
                                     const std::vector<RatFunc>& extra = {});

// Chart coordinates of the class of w.
ParamTuple coordinates(const GroupPresentation& p, const Trivialization& t, const GroupParam& w);

Certificate verify_action_equivariance(const GroupPresentation& p, const SigmaVariety& s);

bool sharp_membership(const GroupPresentation& p, const ParamTuple& w);

struct SharpSolution {
  ParamTuple particular;                // one solution
  std::vector<ParamTuple> directions;   // rational basis of the homogeneous part
  bool solvable = true;
  unsigned degree_bound = 0;
};
// Throws NonAffineRho unless rho is affine in the chart coordinates.
SharpSolution sharp_solve_affine(const GroupPresentation& p, unsigned degree_bound);

// The v (over `unknowns`) with lhs_i == rhs_i on V(ideal) and the extra
// constraints, when the solution is unique; std::nullopt otherwise.
std::optional<ParamTuple> solve_match(const std::vector<std::pair<RatFunc, RatFunc>>& identities,
                                      const IdealRep& ideal, const std::vector<std::string>& unknowns,
                                      const std::vector<Poly>& constraints);

} // namespace sdyn
