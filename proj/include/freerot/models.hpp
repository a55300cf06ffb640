#pragma once

#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "freerot/matrix.hpp"
#include "freerot/presentation.hpp"

namespace freerot {

/// Explicit *-representation candidate: a symmetric rational matrix per generator.
struct MatrixModel {
  std::string name;
  int d = 0;
  GeneratorAssignment u;

  int dim() const { return u.empty() ? 0 : u.begin()->second.rows(); }
  RationalMatrix eval(const FreePolynomial& p, const std::map<Param, Rational>& params = {}) const {
    return eval_matrix(p, u, params);
  }
};

/// The 1x1 point u_ij = s_i [perm(i) = j]; perm is 1-based, signs are +-1.
MatrixModel signed_permutation_model(std::span<const int> perm, std::span<const int> signs);
MatrixModel random_signed_permutation_model(int d, std::mt19937_64& rng);

/// Representation of the O+ relations plus the hyperoctahedral monomials:
/// u_ij = P_ij S_ij P_ij with P_ij the diagonal projection onto the points k
/// with perm_k(i) = j, and S_ij an optional symmetry (identity by default).
MatrixModel hplus_block_model(int d, const std::vector<std::vector<int>>& points,
                              const std::map<Generator, RationalMatrix>& symmetries, std::string name);

/// u_11 = Z, u_22 = X (Pauli), u_kk = 1 for k >= 3, other entries 0; 2x2.
MatrixModel hplus_noncommuting_model(int d);

/// Points id and (1 2), u_33 = X; 2x2, needs d >= 3.
MatrixModel hplus_two_point_model(int d);

/// Two-point block models with X or Z placed on one or two generators both
/// points share; valid for H+(d) by construction. All pairs of permutations
/// for d <= 4, pairs (id, transposition) beyond.
/// Includes hplus_noncommuting_model and, for d >= 3, hplus_two_point_model.
std::vector<MatrixModel> hplus_model_family(int d);

/// d pairwise anticommuting symmetric involutions of size 2^(d-1).
std::vector<RationalMatrix> anticommuting_symmetries(int d);

/// Model of the O_{-1}(d) relations with u_11 u_12 != 0, of size 4^(d-1):
/// u_ij = a_ij e_i (x) e_j with e the anticommuting symmetries above and a the
/// rational orthogonal matrix (1/3)[[1,2,2],[2,1,-2],[2,-2,1]] (+) I_{d-3}.
/// Needs 3 <= d <= 5.
MatrixModel o_minus_one_model(int d = 3);

/// u_ii = s, u_ij = 0 otherwise (1x1).
MatrixModel scaled_identity_model(int d, const Rational& s);

/// Labels of relations that do not vanish in the model.
std::vector<std::string> violated_relations(const MatrixModel& m, const Presentation& p);

/// Random nonzero rationals for the given parameters.
std::map<Param, Rational> random_parameter_values(const std::set<Param>& params, std::mt19937_64& rng);

}  // namespace freerot
