#include "helixdt/predicates.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace helixdt {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
// Forward error bounds of the first-stage floating-point filters.
constexpr double kOrient3dBound = (7.0 + 56.0 * kEpsilon) * kEpsilon;
constexpr double kInsphereBound = (16.0 + 224.0 * kEpsilon) * kEpsilon;

thread_local PredicateCounters tl_counters;

Sign sign_of(double v) { return v > 0 ? Sign::Positive : (v < 0 ? Sign::Negative : Sign::Zero); }
Sign sign_of(const mpz_class& v) {
  const int s = sgn(v);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

// Scales all values by one common power of two so that every one of them
// becomes an integer. Every predicate below is a homogeneous polynomial in
// the coordinates, so a positive common scale leaves its sign unchanged.
template <std::size_t N>
std::array<mpz_class, N> to_integers(const std::array<double, N>& in) {
  int emin = INT_MAX;
  for (double v : in) {
    if (v != 0.0) {
      int e = 0;
      std::frexp(v, &e);
      emin = std::min(emin, e - 53);
    }
  }
  std::array<mpz_class, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    const double v = in[i];
    if (v == 0.0) {
      out[i] = 0;
      continue;
    }
    int e = 0;
    const double m = std::frexp(v, &e);
    const auto mant = static_cast<long>(std::ldexp(m, 53));
    out[i] = mant;
    mpz_mul_2exp(out[i].get_mpz_t(), out[i].get_mpz_t(), static_cast<unsigned long>(e - 53 - emin));
  }
  return out;
}

struct ZPoint {
  mpz_class x, y, z;
};

template <std::size_t K>
std::array<ZPoint, K> to_integer_points(const std::array<const Point3*, K>& pts) {
  std::array<double, 3 * K> flat{};
  for (std::size_t i = 0; i < K; ++i) {
    flat[3 * i] = pts[i]->x;
    flat[3 * i + 1] = pts[i]->y;
    flat[3 * i + 2] = pts[i]->z;
  }
  auto ints = to_integers(flat);
  std::array<ZPoint, K> out;
  for (std::size_t i = 0; i < K; ++i) {
    out[i].x = std::move(ints[3 * i]);
    out[i].y = std::move(ints[3 * i + 1]);
    out[i].z = std::move(ints[3 * i + 2]);
  }
  return out;
}

// det[a-d; b-d; c-d], the negation of our orientation.
Sign orient3d_exact(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const auto p = to_integer_points<4>({&a, &b, &c, &d});
  const mpz_class adx = p[0].x - p[3].x, ady = p[0].y - p[3].y, adz = p[0].z - p[3].z;
  const mpz_class bdx = p[1].x - p[3].x, bdy = p[1].y - p[3].y, bdz = p[1].z - p[3].z;
  const mpz_class cdx = p[2].x - p[3].x, cdy = p[2].y - p[3].y, cdz = p[2].z - p[3].z;
  const mpz_class det = adz * (bdx * cdy - cdx * bdy) + bdz * (cdx * ady - adx * cdy) +
                        cdz * (adx * bdy - bdx * ady);
  return sign_of(det);
}

// Lifted determinant det[(a-e, |a-e|^2); ...; (d-e, |d-e|^2)].
Sign insphere_det_exact(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
                        const Point3& e) {
  const auto p = to_integer_points<5>({&a, &b, &c, &d, &e});
  const mpz_class aex = p[0].x - p[4].x, aey = p[0].y - p[4].y, aez = p[0].z - p[4].z;
  const mpz_class bex = p[1].x - p[4].x, bey = p[1].y - p[4].y, bez = p[1].z - p[4].z;
  const mpz_class cex = p[2].x - p[4].x, cey = p[2].y - p[4].y, cez = p[2].z - p[4].z;
  const mpz_class dex = p[3].x - p[4].x, dey = p[3].y - p[4].y, dez = p[3].z - p[4].z;

  const mpz_class ab = aex * bey - bex * aey;
  const mpz_class bc = bex * cey - cex * bey;
  const mpz_class cd = cex * dey - dex * cey;
  const mpz_class da = dex * aey - aex * dey;
  const mpz_class ac = aex * cey - cex * aey;
  const mpz_class bd = bex * dey - dex * bey;

  const mpz_class abc = aez * bc - bez * ac + cez * ab;
  const mpz_class bcd = bez * cd - cez * bd + dez * bc;
  const mpz_class cda = cez * da + dez * ac + aez * cd;
  const mpz_class dab = dez * ab + aez * bd + bez * da;

  const mpz_class alift = aex * aex + aey * aey + aez * aez;
  const mpz_class blift = bex * bex + bey * bey + bez * bez;
  const mpz_class clift = cex * cex + cey * cey + cez * cez;
  const mpz_class dlift = dex * dex + dey * dey + dez * dez;

  const mpz_class det = (dlift * abc - clift * dab) + (blift * cda - alift * bcd);
  return sign_of(det);
}

// Lifted determinant in the same convention, with a floating-point filter.
Sign insphere_det(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
                  const Point3& e) {
  ++tl_counters.insphere_calls;
  const double aex = a.x - e.x, aey = a.y - e.y, aez = a.z - e.z;
  const double bex = b.x - e.x, bey = b.y - e.y, bez = b.z - e.z;
  const double cex = c.x - e.x, cey = c.y - e.y, cez = c.z - e.z;
  const double dex = d.x - e.x, dey = d.y - e.y, dez = d.z - e.z;

  const double aexbey = aex * bey, bexaey = bex * aey;
  const double bexcey = bex * cey, cexbey = cex * bey;
  const double cexdey = cex * dey, dexcey = dex * cey;
  const double dexaey = dex * aey, aexdey = aex * dey;
  const double aexcey = aex * cey, cexaey = cex * aey;
  const double bexdey = bex * dey, dexbey = dex * bey;

  const double ab = aexbey - bexaey;
  const double bc = bexcey - cexbey;
  const double cd = cexdey - dexcey;
  const double da = dexaey - aexdey;
  const double ac = aexcey - cexaey;
  const double bd = bexdey - dexbey;

  const double abc = aez * bc - bez * ac + cez * ab;
  const double bcd = bez * cd - cez * bd + dez * bc;
  const double cda = cez * da + dez * ac + aez * cd;
  const double dab = dez * ab + aez * bd + bez * da;

  const double alift = aex * aex + aey * aey + aez * aez;
  const double blift = bex * bex + bey * bey + bez * bez;
  const double clift = cex * cex + cey * cey + cez * cez;
  const double dlift = dex * dex + dey * dey + dez * dez;

  const double det = (dlift * abc - clift * dab) + (blift * cda - alift * bcd);

  const double aezp = std::fabs(aez), bezp = std::fabs(bez), cezp = std::fabs(cez),
               dezp = std::fabs(dez);
  const double aexbeyp = std::fabs(aexbey), bexaeyp = std::fabs(bexaey);
  const double bexceyp = std::fabs(bexcey), cexbeyp = std::fabs(cexbey);
  const double cexdeyp = std::fabs(cexdey), dexceyp = std::fabs(dexcey);
  const double dexaeyp = std::fabs(dexaey), aexdeyp = std::fabs(aexdey);
  const double aexceyp = std::fabs(aexcey), cexaeyp = std::fabs(cexaey);
  const double bexdeyp = std::fabs(bexdey), dexbeyp = std::fabs(dexbey);
  const double permanent =
      ((cexdeyp + dexceyp) * bezp + (dexbeyp + bexdeyp) * cezp + (bexceyp + cexbeyp) * dezp) *
          alift +
      ((dexaeyp + aexdeyp) * cezp + (aexceyp + cexaeyp) * dezp + (cexdeyp + dexceyp) * aezp) *
          blift +
      ((aexbeyp + bexaeyp) * dezp + (bexdeyp + dexbeyp) * aezp + (dexaeyp + aexdeyp) * bezp) *
          clift +
      ((bexceyp + cexbeyp) * aezp + (cexaeyp + aexceyp) * bezp + (aexbeyp + bexaeyp) * cezp) *
          dlift;
  const double errbound = kInsphereBound * permanent;
  if (det > errbound || -det > errbound) return sign_of(det);

  ++tl_counters.insphere_exact;
  return insphere_det_exact(a, b, c, d, e);
}

struct Projected {
  mpz_class u, v;
};

template <std::size_t K>
std::array<Projected, K> project(const std::array<ZPoint, K>& p, int axis) {
  std::array<Projected, K> out;
  for (std::size_t i = 0; i < K; ++i) {
    switch (axis) {
      case 0: out[i] = {p[i].y, p[i].z}; break;
      case 1: out[i] = {p[i].z, p[i].x}; break;
      default: out[i] = {p[i].x, p[i].y}; break;
    }
  }
  return out;
}

mpz_class orient2d_z(const Projected& a, const Projected& b, const Projected& c) {
  return (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
}

}  // namespace

PredicateCounters& predicate_counters() { return tl_counters; }

Sign orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  ++tl_counters.orient_calls;
  const double adx = a.x - d.x, bdx = b.x - d.x, cdx = c.x - d.x;
  const double ady = a.y - d.y, bdy = b.y - d.y, cdy = c.y - d.y;
  const double adz = a.z - d.z, bdz = b.z - d.z, cdz = c.z - d.z;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  const double det =
      adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * std::fabs(adz) +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * std::fabs(bdz) +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * std::fabs(cdz);
  const double errbound = kOrient3dBound * permanent;
  if (det > errbound || -det > errbound) return -sign_of(det);

  ++tl_counters.orient_exact;
  return -orient3d_exact(a, b, c, d);
}

Sign insphere(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
              const Point3& e) {
  return -insphere_det(a, b, c, d, e);
}

Sign insphere_perturbed(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
                        const Point3& e, const std::array<VertexId, 5>& ids) {
  const Sign s = insphere(a, b, c, d, e);
  if (s != Sign::Zero) return s;
  ++tl_counters.perturbed_ties;

  // Expand the lifted 5x5 determinant along the lift column: the coefficient
  // of eps_{ids[k]} is (-1)^(k+5) times the orientation of the other four
  // rows (kept in order). The most significant nonzero term decides.
  const std::array<const Point3*, 5> pts{&a, &b, &c, &d, &e};
  std::array<int, 5> order{0, 1, 2, 3, 4};
  std::sort(order.begin(), order.end(), [&](int l, int r) { return ids[l] < ids[r]; });
  for (int k : order) {
    std::array<const Point3*, 4> rest{};
    int m = 0;
    for (int j = 0; j < 5; ++j)
      if (j != k) rest[m++] = pts[j];
    const Sign minor = orient3d(*rest[0], *rest[1], *rest[2], *rest[3]);
    if (minor == Sign::Zero) continue;
    // (-1)^(k+5) with k zero-based -> (-1)^(k+1+5) = (-1)^k.
    const Sign term = (k % 2 == 0) ? minor : -minor;
    // insphere() is the negated lifted determinant.
    return -term;
  }

  // All five points coplanar: the lifted determinant is identically zero.
  int inversions = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (ids[i] > ids[j]) ++inversions;
  return inversions % 2 == 0 ? Sign::Positive : Sign::Negative;
}

Sign orient2d_projected(const Point3& a, const Point3& b, const Point3& c, int axis) {
  const auto p = project(to_integer_points<3>({&a, &b, &c}), axis);
  return sign_of(orient2d_z(p[0], p[1], p[2]));
}

bool collinear(const Point3& a, const Point3& b, const Point3& c) {
  const auto z = to_integer_points<3>({&a, &b, &c});
  for (int axis = 0; axis < 3; ++axis) {
    const auto p = project(z, axis);
    if (sgn(orient2d_z(p[0], p[1], p[2])) != 0) return false;
  }
  return true;
}

Sign coplanar_incircle_perturbed(const Point3& a, const Point3& b, const Point3& c,
                                 const Point3& q, const std::array<VertexId, 4>& ids) {
  const auto z = to_integer_points<4>({&a, &b, &c, &q});

  // Work in the coordinate plane where the triangle does not degenerate.
  int axis = -1;
  std::array<Projected, 4> p;
  mpz_class tri;
  for (int ax = 2; ax >= 0; --ax) {
    p = project(z, ax);
    tri = orient2d_z(p[0], p[1], p[2]);
    if (sgn(tri) != 0) {
      axis = ax;
      break;
    }
  }
  if (axis < 0) throw std::invalid_argument("coplanar_incircle_perturbed: collinear triangle");
  const int tri_sign = sgn(tri);

  // Lifted 4x4 determinant with rows (1, u, v, |p|^2) where the lift is the
  // full 3D squared norm; translating by q gives
  // D = -det[(u_i - u_q, v_i - v_q, |p_i - q|^2)] for i in {a, b, c}.
  std::array<mpz_class, 3> du, dv, lift;
  for (int i = 0; i < 3; ++i) {
    du[i] = p[i].u - p[3].u;
    dv[i] = p[i].v - p[3].v;
    const mpz_class dx = z[i].x - z[3].x, dy = z[i].y - z[3].y, dz = z[i].z - z[3].z;
    lift[i] = dx * dx + dy * dy + dz * dz;
  }
  const mpz_class det3 = du[0] * (dv[1] * lift[2] - dv[2] * lift[1]) -
                         du[1] * (dv[0] * lift[2] - dv[2] * lift[0]) +
                         du[2] * (dv[0] * lift[1] - dv[1] * lift[0]);
  int lifted = -sgn(det3);

  if (lifted == 0) {
    ++tl_counters.perturbed_ties;
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int l, int r) { return ids[l] < ids[r]; });
    for (int k : order) {
      std::array<const Projected*, 3> rest{};
      int m = 0;
      for (int j = 0; j < 4; ++j)
        if (j != k) rest[m++] = &p[j];
      const int minor = sgn(orient2d_z(*rest[0], *rest[1], *rest[2]));
      if (minor == 0) continue;
      // (-1)^(k+4) with k zero-based -> (-1)^(k+1).
      lifted = (k % 2 == 0) ? -minor : minor;
      break;
    }
  }
  // Lifted q below the plane through lifted a, b, c means inside; with
  // (a, b, c) counter-clockwise in the projection that is D < 0.
  const int inside = -lifted * tri_sign;
  return inside > 0 ? Sign::Positive : (inside < 0 ? Sign::Negative : Sign::Zero);
}

namespace {

long double determinant5(std::array<std::array<long double, 5>, 5> m) {
  long double det = 1.0L;
  for (int col = 0; col < 5; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 5; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0L) return 0.0L;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < 5; ++r) {
      const long double f = m[r][col] / m[col][col];
      for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace

PitchIdentityResult verify_pitch_identity(std::span<const double, 5> t, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("verify_pitch_identity: alpha must be a positive finite number");
  for (double v : t)
    if (!std::isfinite(v)) throw std::invalid_argument("verify_pitch_identity: non-finite t");

  const long double al = alpha;
  std::array<std::array<long double, 5>, 5> full{};
  std::array<std::array<long double, 5>, 5> reduced{};
  for (int i = 0; i < 5; ++i) {
    const long double ti = t[i];
    const long double c = std::cos(ti), s = std::sin(ti);
    full[i] = {1.0L, al * ti, c, s, al * al * ti * ti + c * c + s * s};
    reduced[i] = {1.0L, ti, c, s, ti * ti};
  }
  const long double f = determinant5(full);
  const long double r = determinant5(reduced);
  const long double scaled = al * al * al * r;
  constexpr long double kRelTol = 1e-9L;
  const long double scale = std::max(std::fabs(f), std::fabs(scaled));
  PitchIdentityResult out;
  out.full_det = static_cast<double>(f);
  out.reduced_det = static_cast<double>(r);
  out.ratio_ok = std::fabs(f - scaled) <= kRelTol * scale;
  return out;
}

}  // namespace helixdt
