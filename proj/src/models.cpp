#include "freerot/models.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace freerot {

MatrixModel signed_permutation_model(std::span<const int> perm, std::span<const int> signs) {
  const int d = static_cast<int>(perm.size());
  if (d < 1 || signs.size() != perm.size()) throw std::invalid_argument("permutation and signs must have equal length");
  std::vector<int> seen(static_cast<std::size_t>(d), 0);
  for (int p : perm) {
    if (p < 1 || p > d || seen[static_cast<std::size_t>(p - 1)]++) throw std::invalid_argument("not a permutation");
  }
  MatrixModel m;
  m.d = d;
  m.name = "signed-permutation[";
  for (int i = 1; i <= d; ++i) {
    const int s = signs[static_cast<std::size_t>(i - 1)];
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    m.name += (i > 1 ? "," : "") + std::string(s < 0 ? "-" : "") + std::to_string(perm[static_cast<std::size_t>(i - 1)]);
    for (int j = 1; j <= d; ++j) {
      RationalMatrix x(1, 1);
      if (perm[static_cast<std::size_t>(i - 1)] == j) x.at(0, 0) = s;
      m.u.emplace(Generator(i, j), x);
    }
  }
  m.name += "]";
  return m;
}

MatrixModel random_signed_permutation_model(int d, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> signs;
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < d; ++k) signs.push_back(coin(rng) ? 1 : -1);
  return signed_permutation_model(perm, signs);
}

MatrixModel hplus_block_model(int d, const std::vector<std::vector<int>>& points,
                              const std::map<Generator, RationalMatrix>& symmetries, std::string name) {
  const int m = static_cast<int>(points.size());
  if (m < 1) throw std::invalid_argument("block model needs at least one point");
  MatrixModel out;
  out.d = d;
  out.name = std::move(name);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      RationalMatrix proj(m, m);
      for (int k = 0; k < m; ++k) {
        const auto& perm = points[static_cast<std::size_t>(k)];
        if (static_cast<int>(perm.size()) != d) throw std::invalid_argument("point of the wrong size");
        if (perm[static_cast<std::size_t>(i - 1)] == j) proj.at(k, k) = 1;
      }
      auto s = symmetries.find(Generator(i, j));
      out.u.emplace(Generator(i, j), s == symmetries.end() ? proj : proj * s->second * proj);
    }
  return out;
}

namespace {

RationalMatrix pauli_x() { return RationalMatrix{{0, 1}, {1, 0}}; }
RationalMatrix pauli_z() { return RationalMatrix{{1, 0}, {0, -1}}; }

}  // namespace

MatrixModel hplus_noncommuting_model(int d) {
  if (d < 2) throw std::invalid_argument("needs d >= 2");
  std::vector<int> id(static_cast<std::size_t>(d));
  std::iota(id.begin(), id.end(), 1);
  return hplus_block_model(d, {id, id}, {{Generator(1, 1), pauli_z()}, {Generator(2, 2), pauli_x()}},
                           "hplus-noncommuting(d=" + std::to_string(d) + ")");
}

MatrixModel hplus_two_point_model(int d) {
  if (d < 3) throw std::invalid_argument("needs d >= 3");
  std::vector<int> id(static_cast<std::size_t>(d));
  std::iota(id.begin(), id.end(), 1);
  std::vector<int> swap = id;
  std::swap(swap[0], swap[1]);
  return hplus_block_model(d, {id, swap}, {{Generator(3, 3), pauli_x()}},
                           "hplus-two-point(d=" + std::to_string(d) + ")");
}

std::vector<MatrixModel> hplus_model_family(int d) {
  std::vector<MatrixModel> out;
  out.push_back(hplus_noncommuting_model(d));
  if (d >= 3) out.push_back(hplus_two_point_model(d));
  std::vector<int> id(static_cast<std::size_t>(d));
  std::iota(id.begin(), id.end(), 1);
  std::vector<std::vector<int>> perms;
  if (d <= 4) {
    auto p = id;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  } else {
    perms.push_back(id);
    for (int a = 1; a <= d; ++a)
      for (int b = a + 1; b <= d; ++b) {
        auto t = id;
        std::swap(t[static_cast<std::size_t>(a - 1)], t[static_cast<std::size_t>(b - 1)]);
        perms.push_back(t);
      }
  }
  auto perm_text = [](const std::vector<int>& p) {
    std::string s = "[";
    for (int v : p) s += std::to_string(v);
    return s + "]";
  };
  const RationalMatrix sym[2] = {pauli_x(), pauli_z()};
  const char* sym_name[2] = {"X", "Z"};
  // Pairs with the first point id only when d > 4; all unordered pairs otherwise.
  const std::size_t firsts = d <= 4 ? perms.size() : 1;
  for (std::size_t x = 0; x < firsts; ++x)
    for (std::size_t y = x; y < perms.size(); ++y) {
      const auto& p = perms[x];
      const auto& q = perms[y];
      std::vector<Generator> shared;
      for (int i = 1; i <= d; ++i)
        if (p[static_cast<std::size_t>(i - 1)] == q[static_cast<std::size_t>(i - 1)])
          shared.emplace_back(i, p[static_cast<std::size_t>(i - 1)]);
      const std::string tag = "hplus-block(" + perm_text(p) + "," + perm_text(q) + ";";
      for (std::size_t a = 0; a < shared.size(); ++a)
        for (int s = 0; s < 2; ++s) {
          const Generator g = shared[a];
          out.push_back(hplus_block_model(d, {p, q}, {{g, sym[s]}}, tag + g.to_string() + "=" + sym_name[s] + ")"));
          for (std::size_t b = a + 1; b < shared.size(); ++b) {
            const Generator h = shared[b];
            out.push_back(hplus_block_model(d, {p, q}, {{g, sym[s]}, {h, sym[1 - s]}},
                                            tag + g.to_string() + "=" + sym_name[s] + "," + h.to_string() + "=" +
                                                sym_name[1 - s] + ")"));
          }
        }
    }
  return out;
}

std::vector<RationalMatrix> anticommuting_symmetries(int d) {
  if (d < 1) throw std::invalid_argument("needs d >= 1");
  if (d == 1) return {RationalMatrix{{1}}};
  // {X, Z} in size 2, then {X (x) f_1, ..., X (x) f_k, Z (x) I}.
  std::vector<RationalMatrix> e = {pauli_x(), pauli_z()};
  while (static_cast<int>(e.size()) < d) {
    const RationalMatrix id = RationalMatrix::identity(e.front().rows());
    std::vector<RationalMatrix> next;
    for (const auto& f : e) next.push_back(kron(pauli_x(), f));
    next.push_back(kron(pauli_z(), id));
    e = std::move(next);
  }
  return e;
}

MatrixModel o_minus_one_model(int d) {
  if (d < 3 || d > 5) throw std::invalid_argument("O_{-1} model is built for 3 <= d <= 5");
  const auto e = anticommuting_symmetries(d);
  const Rational third(1, 3);
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
  const Rational top[3][3] = {{third, 2 * third, 2 * third}, {2 * third, third, -2 * third}, {2 * third, -2 * third, third}};
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = r < 3 && c < 3 ? top[r][c] : Rational(r == c ? 1 : 0);
  MatrixModel m;
  m.d = d;
  const int size = e.front().rows() * e.front().rows();
  m.name = "o-minus-one-clifford(d=" + std::to_string(d) + "," + std::to_string(size) + "x" + std::to_string(size) + ")";
  for (int r = 1; r <= d; ++r)
    for (int c = 1; c <= d; ++c)
      m.u.emplace(Generator(r, c), a[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] *
                                       kron(e[static_cast<std::size_t>(r - 1)], e[static_cast<std::size_t>(c - 1)]));
  return m;
}

MatrixModel scaled_identity_model(int d, const Rational& s) {
  MatrixModel m;
  m.d = d;
  m.name = "scaled-identity(" + to_string(s) + ")";
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      RationalMatrix x(1, 1);
      if (i == j) x.at(0, 0) = s;
      m.u.emplace(Generator(i, j), x);
    }
  return m;
}

std::vector<std::string> violated_relations(const MatrixModel& m, const Presentation& p) {
  if (m.d != p.d()) throw std::invalid_argument("model and presentation disagree on d");
  std::vector<std::string> out;
  for (const auto& r : p.relations())
    if (!m.eval(r.poly).is_zero()) out.push_back(r.label);
  return out;
}

std::map<Param, Rational> random_parameter_values(const std::set<Param>& params, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 5);
  std::bernoulli_distribution coin(0.5);
  std::map<Param, Rational> out;
  for (const auto& p : params) {
    Rational v(num(rng) * (coin(rng) ? 1 : -1), den(rng));
    v.canonicalize();
    out.emplace(p, v);
  }
  return out;
}

}  // namespace freerot
