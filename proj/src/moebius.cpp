#include "hypdisc/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hypdisc/errors.hpp"

namespace hypdisc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const Primitive& p, std::size_t dim) {
  std::visit(Overloaded{
                 [&](const Translation& t) {
                   require_same_dimension(dim, static_cast<std::size_t>(t.b.size()));
                   if (!t.b.allFinite()) throw DomainError("translation vector is not finite");
                 },
                 [&](const Orthogonal& o) {
                   if (o.q.rows() != o.q.cols()) throw DomainError("orthogonal factor must be square");
                   require_same_dimension(dim, static_cast<std::size_t>(o.q.rows()));
                   const Mat defect = o.q.transpose() * o.q - Mat::Identity(o.q.rows(), o.q.cols());
                   if (!(defect.norm() <= kOrthogonalityTolerance)) {
                     throw DomainError("matrix is not orthogonal to 1e-12");
                   }
                 },
                 [&](const Dilation& d) {
                   if (!(d.lambda > 0.0) || !std::isfinite(d.lambda)) {
                     throw DomainError("dilation factor must be positive");
                   }
                 },
                 [](const UnitInversion&) {},
             },
             p);
}

Primitive invert(const Primitive& p) {
  return std::visit(Overloaded{
                        [](const Translation& t) -> Primitive { return Translation{-t.b}; },
                        [](const Orthogonal& o) -> Primitive { return Orthogonal{o.q.transpose()}; },
                        [](const Dilation& d) -> Primitive { return Dilation{1.0 / d.lambda}; },
                        [](const UnitInversion&) -> Primitive { return UnitInversion{}; },
                    },
                    p);
}

BoundaryPoint step(const Primitive& prim, const BoundaryPoint& p, Eigen::Index dim) {
  return std::visit(Overloaded{
                        [&](const Translation& t) {
                          return p.is_infinity() ? p : BoundaryPoint::finite(p.coords() + t.b);
                        },
                        [&](const Orthogonal& o) {
                          return p.is_infinity() ? p : BoundaryPoint::finite(o.q * p.coords());
                        },
                        [&](const Dilation& d) {
                          return p.is_infinity() ? p : BoundaryPoint::finite(d.lambda * p.coords());
                        },
                        [&](const UnitInversion&) {
                          if (p.is_infinity()) {
                            return BoundaryPoint::finite(Vec::Zero(dim));
                          }
                          const double n2 = p.coords().squaredNorm();
                          if (n2 == 0.0) return BoundaryPoint::infinity();
                          return BoundaryPoint::finite(p.coords() / n2);
                        },
                    },
                    prim);
}

Eigen::Index dim_of(const MoebiusWord& h) {
  return static_cast<Eigen::Index>(h.boundary_dimension());
}

BoundaryPoint apply_impl(const MoebiusWord& h, BoundaryPoint p) {
  const auto& prims = h.primitives();
  for (auto it = prims.rbegin(); it != prims.rend(); ++it) p = step(*it, p, dim_of(h));
  return p;
}

}  // namespace

MoebiusWord::MoebiusWord(std::size_t boundary_dim) : dim_(boundary_dim) {
  if (dim_ < 1) throw DomainError("boundary dimension must be at least 1 (n >= 2)");
}

MoebiusWord::MoebiusWord(std::size_t boundary_dim, std::vector<Primitive> primitives)
    : dim_(boundary_dim), primitives_(std::move(primitives)) {
  if (dim_ < 1) throw DomainError("boundary dimension must be at least 1 (n >= 2)");
  for (const auto& p : primitives_) validate(p, dim_);
}

MoebiusWord MoebiusWord::translation(Vec b) {
  const auto dim = static_cast<std::size_t>(b.size());
  return MoebiusWord(dim, {Translation{std::move(b)}});
}

MoebiusWord MoebiusWord::orthogonal(Mat q) {
  const auto dim = static_cast<std::size_t>(q.rows());
  return MoebiusWord(dim, {Orthogonal{std::move(q)}});
}

MoebiusWord MoebiusWord::dilation(std::size_t boundary_dim, double lambda) {
  return MoebiusWord(boundary_dim, {Dilation{lambda}});
}

MoebiusWord MoebiusWord::unit_inversion(std::size_t boundary_dim) {
  return MoebiusWord(boundary_dim, {UnitInversion{}});
}

MoebiusWord MoebiusWord::sphere_inversion(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  const auto dim = static_cast<std::size_t>(center.size());
  return MoebiusWord(dim, {Translation{center}, Dilation{radius}, UnitInversion{},
                           Dilation{1.0 / radius}, Translation{-center}});
}

bool MoebiusWord::orientation_preserving() const {
  bool preserving = true;
  for (const auto& p : primitives_) {
    if (std::holds_alternative<UnitInversion>(p)) preserving = !preserving;
    if (const auto* o = std::get_if<Orthogonal>(&p); o && o->q.determinant() < 0) {
      preserving = !preserving;
    }
  }
  return preserving;
}

MoebiusWord compose(const MoebiusWord& outer, const MoebiusWord& inner) {
  require_same_dimension(outer.boundary_dimension(), inner.boundary_dimension());
  std::vector<Primitive> prims = outer.primitives();
  prims.insert(prims.end(), inner.primitives().begin(), inner.primitives().end());
  return MoebiusWord(outer.boundary_dimension(), std::move(prims));
}

MoebiusWord inverse(const MoebiusWord& h) {
  std::vector<Primitive> prims;
  prims.reserve(h.primitives().size());
  for (auto it = h.primitives().rbegin(); it != h.primitives().rend(); ++it) {
    prims.push_back(invert(*it));
  }
  return MoebiusWord(h.boundary_dimension(), std::move(prims));
}

MoebiusWord power(const MoebiusWord& h, int k) {
  const MoebiusWord base = k < 0 ? inverse(h) : h;
  MoebiusWord out(h.boundary_dimension());
  for (int i = 0; i < std::abs(k); ++i) out = compose(base, out);
  return out;
}

BoundaryPoint apply_boundary(const MoebiusWord& h, const BoundaryPoint& p) {
  if (!p.is_infinity()) {
    require_same_dimension(h.boundary_dimension(), static_cast<std::size_t>(p.coords().size()));
  }
  return apply_impl(h, p);
}

BoundaryPoint apply_boundary(const MoebiusWord& h, const Vec& p) {
  return apply_boundary(h, BoundaryPoint::finite(p));
}

HPoint apply_upper(const MoebiusWord& h, const HPoint& x) {
  require_same_dimension(h.dimension(), x.dimension());
  Vec v = x.v();
  double t = x.t();
  const auto& prims = h.primitives();
  for (auto it = prims.rbegin(); it != prims.rend(); ++it) {
    std::visit(Overloaded{
                   [&](const Translation& tr) { v += tr.b; },
                   [&](const Orthogonal& o) { v = o.q * v; },
                   [&](const Dilation& d) {
                     v *= d.lambda;
                     t *= d.lambda;
                   },
                   [&](const UnitInversion&) {
                     const double n2 = v.squaredNorm() + t * t;
                     v /= n2;
                     t /= n2;
                   },
               },
               *it);
  }
  return HPoint(std::move(v), t);
}

double conformal_factor(const MoebiusWord& h, const Vec& p) {
  require_same_dimension(h.boundary_dimension(), static_cast<std::size_t>(p.size()));
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  constexpr int kMaxRetries = 5;

  Vec probe = p;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    double factor = 1.0;
    BoundaryPoint q = BoundaryPoint::finite(probe);
    bool pole = false;
    const auto& prims = h.primitives();
    for (auto it = prims.rbegin(); it != prims.rend() && !pole; ++it) {
      if (q.is_infinity()) {
        pole = true;
        break;
      }
      if (const auto* d = std::get_if<Dilation>(&*it)) {
        factor *= d->lambda;
      } else if (std::holds_alternative<UnitInversion>(*it)) {
        const double n2 = q.coords().squaredNorm();
        if (n2 == 0.0) {
          pole = true;
          break;
        }
        factor /= n2;
      }
      q = step(*it, q, dim_of(h));
    }
    if (!pole && !q.is_infinity()) return factor;

    Vec dir(probe.size());
    for (auto& c : dir) c = normal(rng);
    probe = p + 1e-6 * dir / dir.norm();
  }
  throw PoleError("conformal_factor: probe point stays on a pole after 5 perturbations");
}

IsometricSphere isometric_sphere(const MoebiusWord& h) {
  const BoundaryPoint image_of_inf = apply_boundary(h, BoundaryPoint::infinity());
  if (image_of_inf.is_infinity()) throw FixesInfinity();
  const BoundaryPoint pre_image = apply_boundary(inverse(h), BoundaryPoint::infinity());
  if (pre_image.is_infinity()) throw FixesInfinity();

  IsometricSphere s{pre_image.coords(), image_of_inf.coords(), 0.0};
  const auto m = s.center.size();
  const double scale = 1.0 + s.center.norm();

  Vec d1 = Vec::Zero(m);
  d1(0) = scale;
  Vec d2 = Vec::Constant(m, 1.0);
  d2 *= -0.8 * scale / d2.norm();
  if (m == 1) d2(0) = -0.8 * scale;

  const double r2a = conformal_factor(h, s.center + d1) * d1.squaredNorm();
  const double r2b = conformal_factor(h, s.center + d2) * d2.squaredNorm();
  if (!(std::abs(r2a - r2b) <= 1e-8 * std::max(r2a, r2b))) {
    throw Error("isometric sphere radius probes disagree beyond 1e-8");
  }
  s.radius = std::sqrt(r2a);
  return s;
}

HPoint vertical_image(const MoebiusWord& h, double s) {
  const IsometricSphere sphere = isometric_sphere(h);
  return apply_upper(h, vertical_point(sphere.center, s));
}

std::vector<Vec> probe_frame(std::size_t boundary_dim) {
  std::mt19937_64 rng(20130723);
  std::uniform_real_distribution<double> unif(-1.7, 1.9);
  std::vector<Vec> frame;
  for (std::size_t k = 0; k < boundary_dim + 2; ++k) {
    Vec p(static_cast<Eigen::Index>(boundary_dim));
    for (auto& c : p) c = unif(rng);
    frame.push_back(std::move(p));
  }
  return frame;
}

namespace {

// inf survives a round trip through an inversion only when some intermediate
// point is exactly 0, so a finite image beyond 1/tol also counts as inf.
bool frame_fixed(std::span<const Vec> frame, std::span<const BoundaryPoint> images,
                 const BoundaryPoint& inf_image, double tol) {
  if (!inf_image.is_infinity() && inf_image.coords().norm() * tol < 1.0) return false;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    if (images[k].is_infinity()) return false;
    if ((images[k].coords() - frame[k]).norm() > tol * (1.0 + frame[k].norm())) return false;
  }
  return true;
}

}  // namespace

bool acts_as_identity(const MoebiusWord& h, double tol) {
  const auto frame = probe_frame(h.boundary_dimension());
  std::vector<BoundaryPoint> images;
  for (const auto& p : frame) images.push_back(apply_boundary(h, p));
  return frame_fixed(frame, images, apply_boundary(h, BoundaryPoint::infinity()), tol);
}

std::string format_word(const std::vector<int>& letters, std::span<const std::string> names) {
  if (letters.empty()) return "id";
  std::string out;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (k) out += ' ';
    out += names[static_cast<std::size_t>(letters[k] / 2)];
    if (letters[k] % 2) out += "^-1";
  }
  return out;
}

namespace {

struct ScanState {
  std::span<const MoebiusWord> letters_maps;
  std::span<const Vec> frame;
  const HPoint* base;
  double delta;
  int max_len;
  std::size_t max_words;
  std::size_t visited = 0;
  std::vector<int> word;  // word[0] is the outermost letter
  std::vector<ScanHit> hits;
};

bool keep_representative(const std::vector<int>& w) {
  // Inverse word: reversed, each letter toggled.
  const std::size_t n = w.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int inv = w[n - 1 - k] ^ 1;
    if (w[k] != inv) return w[k] < inv;
  }
  return true;
}

void extend(ScanState& st, const HPoint& image, const std::vector<BoundaryPoint>& frame_images,
            const BoundaryPoint& inf_image) {
  if (static_cast<int>(st.word.size()) == st.max_len) return;
  const int alphabet = static_cast<int>(st.letters_maps.size());
  for (int letter = 0; letter < alphabet; ++letter) {
    // Freely reduced: never follow x by x^-1. New letters go on the left.
    if (!st.word.empty() && st.word.front() == (letter ^ 1)) continue;
    if (++st.visited > st.max_words) {
      throw BudgetExceeded("near_identity_scan visited more than " + std::to_string(st.max_words) +
                           " words");
    }
    const MoebiusWord& m = st.letters_maps[static_cast<std::size_t>(letter)];
    const HPoint next = apply_upper(m, image);
    std::vector<BoundaryPoint> next_frame;
    next_frame.reserve(frame_images.size());
    for (const auto& p : frame_images) next_frame.push_back(apply_boundary(m, p));
    const BoundaryPoint next_inf = apply_boundary(m, inf_image);

    st.word.insert(st.word.begin(), letter);
    const double disp = hyperbolic_distance(next, *st.base);
    if (disp < st.delta && keep_representative(st.word)) {
      st.hits.push_back({st.word, disp, frame_fixed(st.frame, next_frame, next_inf, 1e-9)});
    }
    extend(st, next, next_frame, next_inf);
    st.word.erase(st.word.begin());
  }
}

}  // namespace

std::vector<ScanHit> near_identity_scan(std::span<const MoebiusWord> gens, int max_len,
                                        const HPoint& basepoint, double delta,
                                        std::size_t max_words) {
  if (max_len < 1) throw DomainError("max_len must be at least 1");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (gens.empty()) throw DomainError("near_identity_scan needs at least one generator");
  const std::size_t dim = gens.front().boundary_dimension();
  for (const auto& g : gens) require_same_dimension(dim, g.boundary_dimension());
  require_same_dimension(dim + 1, basepoint.dimension());

  std::vector<MoebiusWord> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  const auto frame = probe_frame(dim);
  std::vector<BoundaryPoint> frame_images;
  for (const auto& p : frame) frame_images.push_back(BoundaryPoint::finite(p));

  ScanState st{letters, frame, &basepoint, delta, max_len, max_words, 0, {}, {}};
  extend(st, basepoint, frame_images, BoundaryPoint::infinity());

  std::sort(st.hits.begin(), st.hits.end(), [](const ScanHit& a, const ScanHit& b) {
    if (a.displacement != b.displacement) return a.displacement < b.displacement;
    return a.letters < b.letters;
  });
  return std::move(st.hits);
}

}  // namespace hypdisc
