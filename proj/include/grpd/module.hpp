#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/convolution.hpp"
#include "grpd/error.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/matrix.hpp"
#include "grpd/report.hpp"
#include "grpd/representation.hpp"

namespace grpd {

/// A finite-dimensional left C(G)-module, given by the action matrix of each
/// basis element delta_g.
class CModule {
 public:
  CModule(GroupoidPtr groupoid, std::size_t dim, std::vector<Matrix> act, std::string name = {});

  static CModule zero(const GroupoidPtr& g, std::string name = {});

  [[nodiscard]] const GroupoidPtr& groupoid() const { return groupoid_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const Matrix& act(Arrow g) const { return act_[g]; }
  [[nodiscard]] const std::vector<Matrix>& acts() const { return act_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] CModule renamed(std::string name) const;

  /// e_x = action of delta_{1_x}.
  [[nodiscard]] const Matrix& idempotent(Obj x) const { return act_[groupoid_->identity(x)]; }

  /// Action of an arbitrary algebra element.
  [[nodiscard]] Matrix act(const AlgebraElement& a) const;

  friend bool operator==(const CModule& a, const CModule& b);

 private:
  GroupoidPtr groupoid_;
  std::size_t dim_;
  std::vector<Matrix> act_;
  std::string name_;
};

/// Violations: "action law" (act(g')act(g'') != act(g'g''), or nonzero on a
/// non-composable pair), "nondegeneracy" (sum_x e_x != I), "orthogonality".
ValidationReport validate_module(const CModule& m);

/// C(G) as a left module over itself (basis = arrows).
CModule regular_module(const GroupoidPtr& g, std::string name = {});

class ModuleMorphism {
 public:
  ModuleMorphism(CModule source, CModule target, Matrix map);

  [[nodiscard]] const CModule& source() const { return source_; }
  [[nodiscard]] const CModule& target() const { return target_; }
  [[nodiscard]] const Matrix& map() const { return map_; }

 private:
  CModule source_;
  CModule target_;
  Matrix map_;
};

/// Violation "intertwining" at every arrow where map * act_src != act_tgt * map.
ValidationReport validate_module_morphism(const ModuleMorphism& f);

ModuleMorphism identity_module_morphism(const CModule& m);
ModuleMorphism compose(const ModuleMorphism& after, const ModuleMorphism& before);
bool is_isomorphism(const ModuleMorphism& f);

/// Basis of Hom_{C(G)}(M, N).
std::vector<ModuleMorphism> module_hom_space(const CModule& m, const CModule& n);

/// The fiber M(x), realized as e_x M. `basis` (dim M x d) is the
/// column-reduced echelon basis of the image of e_x; `coords` (d x dim M)
/// sends m to the coordinates of e_x m in that basis.
struct Fiber {
  std::size_t dim = 0;
  Matrix basis;
  Matrix coords;
};

/// Throws PreconditionError when the module is not valid.
Fiber fiber(const CModule& m, Obj x);

/// dim M / I_x M with I_x M spanned by the images of e_y for y != x; the
/// quotient description of the fiber, computed independently of `fiber`.
std::size_t quotient_fiber_dim(const CModule& m, Obj x);

struct RankReport {
  bool finite_type = false;
  /// k such that M embeds into C(M)^k as a C(M)-module.
  std::size_t embedding_rank = 0;
  /// The C(M)-linear injection M -> C(M)^k used as the certificate.
  Matrix embedding;
  bool constant_rank = false;
  std::vector<std::size_t> rank_function;
};

RankReport is_finite_type_constant_rank(const CModule& m);

/// Thrown by `reconstruct` for modules whose fiber dimension varies.
class NonConstantRankError : public PreconditionError {
 public:
  NonConstantRankError(const std::string& what, std::vector<std::size_t> ranks)
      : PreconditionError(what), rank_function(std::move(ranks)) {}
  std::vector<std::size_t> rank_function;
};

/// The module of sections: underlying space (+)_x E_x, delta_g acting by the
/// single block rho(g) from the src(g) block to the tgt(g) block.
CModule gamma(const Representation& e);
/// Block diagonal (+)_x phi(x).
ModuleMorphism gamma_mor(const RepMorphism& phi);

/// The representation on the fibers e_x M with rho(g) the restriction of
/// act(g) to e_{src g} M -> e_{tgt g} M. Throws NonConstantRankError.
Representation reconstruct(const CModule& m);
RepMorphism reconstruct_mor(const ModuleMorphism& f);

/// M -> gamma(reconstruct(M)), m -> (x -> coordinates of e_x m).
ModuleMorphism epsilon(const CModule& m);
/// reconstruct(gamma(E)) -> E, evaluation of sections at each object.
RepMorphism eta(const Representation& e);

/// Serre-Swan roundtrip over the given witnesses. Modules of non-constant
/// rank are recorded as out of scope and do not count as failures.
CheckReport check_serre_swan(const GroupoidPtr& g, const std::vector<Representation>& reps,
                             const std::vector<CModule>& modules);

std::string rank_function_string(const FiniteGroupoid& g, const std::vector<std::size_t>& ranks);

}  // namespace grpd
