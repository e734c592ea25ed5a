#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hypdisc/geom_core.hpp"

namespace hypdisc {

// Conformal primitives of R^{n-1} u {inf}. Every Moebius map is a finite
// composition of these.
struct Translation {
  Vec b;
};
struct Orthogonal {
  Mat q;  // Q^T Q = I to 1e-12; det may be -1
};
struct Dilation {
  double lambda;  // > 0
};
struct UnitInversion {};  // x -> x / |x|^2

using Primitive = std::variant<Translation, Orthogonal, Dilation, UnitInversion>;

inline constexpr double kOrthogonalityTolerance = 1e-12;

// An orientation-preserving (or, for intermediate building blocks, any)
// Moebius map stored as a composition word. primitives()[0] is the OUTERMOST
// factor: the word [P0, P1, P2] is the map P0 o P1 o P2, so P2 acts first.
// The empty word is the identity.
class MoebiusWord {
 public:
  // Identity on R^{boundary_dim}.
  explicit MoebiusWord(std::size_t boundary_dim);
  MoebiusWord(std::size_t boundary_dim, std::vector<Primitive> primitives);

  static MoebiusWord translation(Vec b);
  static MoebiusWord orthogonal(Mat q);
  static MoebiusWord dilation(std::size_t boundary_dim, double lambda);
  static MoebiusWord unit_inversion(std::size_t boundary_dim);
  // Inversion in the sphere S(center, radius): x -> c + R^2 (x-c)/|x-c|^2.
  static MoebiusWord sphere_inversion(const Vec& center, double radius);

  std::size_t boundary_dimension() const { return dim_; }
  // n, the dimension of the hyperbolic space the Poincare extension acts on.
  std::size_t dimension() const { return dim_ + 1; }
  const std::vector<Primitive>& primitives() const { return primitives_; }
  bool empty() const { return primitives_.empty(); }
  // Parity of the number of orientation-reversing factors.
  bool orientation_preserving() const;

 private:
  std::size_t dim_;
  std::vector<Primitive> primitives_;
};

// outer o inner.
MoebiusWord compose(const MoebiusWord& outer, const MoebiusWord& inner);
MoebiusWord inverse(const MoebiusWord& h);
// h^k for any integer k (negative powers use the inverse).
MoebiusWord power(const MoebiusWord& h, int k);

BoundaryPoint apply_boundary(const MoebiusWord& h, const BoundaryPoint& p);
BoundaryPoint apply_boundary(const MoebiusWord& h, const Vec& p);
HPoint apply_upper(const MoebiusWord& h, const HPoint& x);

// |h'(p)|, the scale of the conformal differential at a finite point. If p
// lands on a pole of an intermediate inversion it is nudged by a
// deterministic 1e-6 perturbation, at most five times.
double conformal_factor(const MoebiusWord& h, const Vec& p);

struct IsometricSphere {
  Vec center;    // v_h = h^{-1}(inf)
  Vec cocenter;  // v_{h^{-1}} = h(inf)
  double radius;
};

// Throws FixesInfinity when h(inf) = inf.
IsometricSphere isometric_sphere(const MoebiusWord& h);

// h applied to the point at height s above the center of S_h. Lands on the
// vertical line over the cocenter at height R_h^2 / s.
HPoint vertical_image(const MoebiusWord& h, double s);

// n+1 fixed generic boundary points; the identity test evaluates on these
// plus inf.
std::vector<Vec> probe_frame(std::size_t boundary_dim);
bool acts_as_identity(const MoebiusWord& h, double tol = 1e-9);

// Letters are 2*k for generator k and 2*k+1 for its inverse.
struct ScanHit {
  std::vector<int> letters;
  double displacement;
  bool identity;  // the word is a relation: it evaluates to the identity map
};

std::string format_word(const std::vector<int>& letters, std::span<const std::string> names);

// Enumerates freely reduced words up to max_len in the generators and their
// inverses; reports words moving the basepoint less than delta. w and w^-1
// move the basepoint equally, so only the lexicographically smaller of the
// pair is listed. Sorted by displacement, then by letters. Throws
// BudgetExceeded if more than max_words words would be visited.
std::vector<ScanHit> near_identity_scan(std::span<const MoebiusWord> gens, int max_len,
                                        const HPoint& basepoint, double delta,
                                        std::size_t max_words = 2'000'000);

}  // namespace hypdisc
