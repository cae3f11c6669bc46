#include "knotbound/classical.hpp"

#include <cstdlib>

#include "knotbound/error.hpp"
#include "knotbound/kernels.hpp"

namespace kb {

CheckerboardColoring checkerboard_coloring(const Diagram& d, int white) {
  CheckerboardColoring cb;
  cb.faces = trace_faces(d);
  cb.colour = checkerboard(d, cb.faces);
  cb.white = white;
  const int n = d.crossing_count();
  cb.eta.resize(n);
  cb.type.resize(n);
  for (int i = 0; i < n; ++i) {
    bool white02 = cb.colour[cb.faces.face_of_corner[4 * i]] == white;
    cb.eta[i] = white02 ? 1 : -1;
    // positive: oriented smoothing joins corners 1,3; negative joins 0,2
    bool joined_black = d.sign(i) > 0 ? white02 : !white02;
    cb.type[i] = joined_black ? 2 : 1;
  }
  return cb;
}

GoeritzData goeritz(const Diagram& d, int white) {
  if (white != 0 && white != 1) throw InputError("white colour must be 0 or 1");
  if (!d.is_connected()) throw SplitDiagramError("Goeritz matrix needs a connected diagram");
  GoeritzData g;
  if (d.crossing_count() == 0) return g;
  CheckerboardColoring cb = checkerboard_coloring(d, white);
  const int nf = static_cast<int>(cb.faces.faces.size());
  std::vector<int> index(nf, -1);
  for (int f = 0; f < nf; ++f)
    if (cb.colour[f] == white) {
      index[f] = static_cast<int>(g.regions.size());
      g.regions.push_back(f);
    }
  const int w = static_cast<int>(g.regions.size());
  IntMatrix full(w, std::vector<std::int64_t>(w, 0));
  for (int i = 0; i < d.crossing_count(); ++i) {
    int k = cb.eta[i] > 0 ? 0 : 1;
    int a = index[cb.faces.face_of_corner[4 * i + k]];
    int b = index[cb.faces.face_of_corner[4 * i + k + 2]];
    if (a < 0 || b < 0) throw InvariantError("white corner maps to a black face");
    if (cb.type[i] == 2) g.mu += cb.eta[i];
    if (a == b) continue;
    full[a][b] -= cb.eta[i];
    full[b][a] -= cb.eta[i];
    full[a][a] += cb.eta[i];
    full[b][b] += cb.eta[i];
  }
  g.matrix.assign(w - 1, std::vector<std::int64_t>(w - 1));
  for (int r = 0; r + 1 < w; ++r)
    for (int c = 0; c + 1 < w; ++c) g.matrix[r][c] = full[r][c];
  g.form_signature = kb::signature(g.matrix);
  return g;
}

int signature(const Diagram& d) {
  GoeritzData g = goeritz(d);
  return g.form_signature - g.mu;
}

std::int64_t determinant(const Diagram& d) {
  GoeritzData g = goeritz(d);
  mpz_class v = abs(determinant(g.matrix));
  if (!v.fits_slong_p()) throw CeilingError("determinant exceeds 64 bits");
  return v.get_si();
}

Laurent kauffman_bracket(const Diagram& d, int ceiling, bool parallel) {
  const int n = d.crossing_count();
  if (n > ceiling)
    throw CeilingError("bracket of a " + std::to_string(n) + "-crossing diagram exceeds ceiling " +
                       std::to_string(ceiling));
  StateTable t = state_table(d);
  StateHistogram h = parallel ? state_histogram_parallel(t) : state_histogram_serial(t);
  const Laurent delta = Laurent::monomial(2, -1) + Laurent::monomial(-2, -1);
  std::vector<Laurent> dpow{Laurent::monomial(0)};
  for (int k = 1; k < h.stride; ++k) dpow.push_back(dpow.back() * delta);
  Laurent out;
  for (int b = 0; b <= n; ++b)
    for (int k = 1; k < h.stride; ++k) {
      std::int64_t cnt = h.counts[b * h.stride + k];
      if (cnt) out += dpow[k - 1].shifted(n - 2 * b).scaled(cnt);
    }
  return out;
}

Laurent jones_from_bracket(const Laurent& bracket, int writhe) {
  // (-A^3)^(-w) <D>, then A = t^(-1/4), i.e. A^e = (t^(1/2))^(-e/2)
  Laurent f = bracket.shifted(-3 * writhe);
  if (writhe % 2 != 0) f = f.scaled(-1);
  Laurent v;
  for (auto [e, c] : f.terms()) {
    if (e % 2 != 0) throw InvariantError("odd A-exponent in normalised bracket");
    v += Laurent::monomial(-e / 2, c);
  }
  return v;
}

Laurent jones(const Diagram& d, int ceiling) {
  return jones_from_bracket(kauffman_bracket(d, ceiling), d.writhe());
}

std::int64_t abs_at_minus_one(const Laurent& jones) {
  std::int64_t re = 0, im = 0;
  for (auto [e, c] : jones.terms()) {
    switch (((e % 4) + 4) % 4) {
      case 0: re += c; break;
      case 1: im += c; break;
      case 2: re -= c; break;
      case 3: im -= c; break;
    }
  }
  if (re != 0 && im != 0) throw InvariantError("Jones exponents of mixed parity");
  return std::llabs(re) + std::llabs(im);
}

}  // namespace kb
