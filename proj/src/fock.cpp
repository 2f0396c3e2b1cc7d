#include "bosesteer/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

namespace bosesteer {

namespace {

constexpr std::array<const char*, 8> kStandardLabels = {"a", "b", "A", "B", "c", "C", "d", "D"};

using Terms = ModePolynomial::Terms;

Terms multiply(const Terms& x, const Terms& y) {
  Terms out;
  for (const auto& [ex, cx] : x) {
    for (const auto& [ey, cy] : y) {
      Exponents e(ex.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ex[i] + ey[i];
      out[e] += cx * cy;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == Complex{}; });
  return out;
}

double fock_weight(const Exponents& e) {
  double w = 1.0;
  for (unsigned n : e) w *= std::sqrt(factorial(n));
  return w;
}

}  // namespace

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

ModeLabel::ModeLabel(std::string name) : name_(std::move(name)) {
  auto it = std::find(kStandardLabels.begin(), kStandardLabels.end(), name_);
  rank_ = it == kStandardLabels.end() ? static_cast<int>(kStandardLabels.size())
                                      : static_cast<int>(it - kStandardLabels.begin());
}

bool operator<(const ModeLabel& x, const ModeLabel& y) {
  if (x.rank_ != y.rank_) return x.rank_ < y.rank_;
  return x.name_ < y.name_;
}

ModePolynomial::ModePolynomial(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
  if (std::adjacent_find(modes_.begin(), modes_.end()) != modes_.end())
    throw LabelCollision("duplicate mode label in polynomial");
}

std::optional<std::size_t> ModePolynomial::index_of(const ModeLabel& label) const {
  auto it = std::lower_bound(modes_.begin(), modes_.end(), label);
  if (it == modes_.end() || !(*it == label)) return std::nullopt;
  return static_cast<std::size_t>(it - modes_.begin());
}

void ModePolynomial::add_term(const Exponents& e, Complex c) {
  if (e.size() != modes_.size()) throw ModeMismatch("exponent vector length does not match modes");
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

void ModePolynomial::add_term(const std::map<ModeLabel, unsigned>& occupations, Complex c) {
  Exponents e(modes_.size(), 0);
  for (const auto& [label, n] : occupations) {
    auto idx = index_of(label);
    if (!idx) throw ModeMismatch("unknown mode label '" + label.name() + "'");
    e[*idx] = n;
  }
  add_term(e, c);
}

Complex ModePolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

std::optional<unsigned> ModePolynomial::homogeneous_degree() const {
  std::optional<unsigned> degree;
  for (const auto& [e, c] : terms_) {
    unsigned d = std::accumulate(e.begin(), e.end(), 0u);
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree;
}

ModePolynomial& ModePolynomial::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

ModePolynomial operator+(const ModePolynomial& p, const ModePolynomial& q) {
  if (p.modes() != q.modes()) throw ModeMismatch("cannot add polynomials over different modes");
  ModePolynomial out = p;
  for (const auto& [e, c] : q.terms()) out.add_term(e, c);
  return out;
}

void LinearModeMap::set(const ModeLabel& input, Image image) { images_[input] = std::move(image); }

std::vector<ModeLabel> LinearModeMap::outputs() const {
  std::set<ModeLabel> out;
  for (const auto& [in, image] : images_)
    for (const auto& [label, c] : image) out.insert(label);
  return {out.begin(), out.end()};
}

bool LinearModeMap::is_unitary(double tol) const {
  const auto outs = outputs();
  if (outs.size() != images_.size()) return false;
  const std::size_t n = outs.size();
  std::vector<std::vector<Complex>> m;
  for (const auto& [in, image] : images_) {
    std::vector<Complex> row(n);
    for (const auto& [label, c] : image) {
      auto j = std::lower_bound(outs.begin(), outs.end(), label) - outs.begin();
      row[j] += c;
    }
    m.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      Complex s{};
      for (std::size_t j = 0; j < n; ++j) s += m[i][j] * std::conj(m[k][j]);
      if (std::abs(s - Complex(i == k ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

LinearModeMap LinearModeMap::direct_sum(const LinearModeMap& x, const LinearModeMap& y) {
  LinearModeMap out = x;
  const auto xo = x.outputs();
  for (const auto& [in, image] : y.images()) {
    if (out.images_.contains(in)) throw LabelCollision("input mode '" + in.name() + "' mapped twice");
    for (const auto& [label, c] : image)
      if (std::binary_search(xo.begin(), xo.end(), label))
        throw LabelCollision("output mode '" + label.name() + "' shared by both blocks");
    out.images_[in] = image;
  }
  return out;
}

ModePolynomial monomial_state(const std::map<ModeLabel, unsigned>& occupations) {
  std::vector<ModeLabel> modes;
  for (const auto& [label, n] : occupations) modes.push_back(label);
  ModePolynomial p(std::move(modes));
  double coefficient = 1.0;
  for (const auto& [label, n] : occupations) coefficient /= std::sqrt(factorial(n));
  p.add_term(occupations, coefficient);
  return p;
}

ModePolynomial tensor(const ModePolynomial& p, const ModePolynomial& q) {
  std::vector<ModeLabel> modes = p.modes();
  modes.insert(modes.end(), q.modes().begin(), q.modes().end());
  ModePolynomial out(modes);  // throws LabelCollision on overlap

  std::vector<std::size_t> p_slot, q_slot;
  for (const auto& m : p.modes()) p_slot.push_back(*out.index_of(m));
  for (const auto& m : q.modes()) q_slot.push_back(*out.index_of(m));

  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) {
      Exponents e(out.modes().size(), 0);
      for (std::size_t i = 0; i < ep.size(); ++i) e[p_slot[i]] = ep[i];
      for (std::size_t i = 0; i < eq.size(); ++i) e[q_slot[i]] = eq[i];
      out.add_term(e, cp * cq);
    }
  }
  return out;
}

ModePolynomial substitute(const ModePolynomial& p, const LinearModeMap& map) {
  if (!map.is_unitary()) throw NonUnitaryMap("mode map is not unitary");
  const auto outs = map.outputs();
  const std::size_t n_out = outs.size();

  // powers[k][e] = (image of mode k)^e over the output modes
  std::vector<std::vector<Terms>> powers;
  for (std::size_t k = 0; k < p.modes().size(); ++k) {
    auto it = map.images().find(p.modes()[k]);
    if (it == map.images().end())
      throw ModeMismatch("mode '" + p.modes()[k].name() + "' is not in the map's domain");
    Terms linear;
    for (const auto& [label, c] : it->second) {
      Exponents e(n_out, 0);
      e[std::lower_bound(outs.begin(), outs.end(), label) - outs.begin()] = 1;
      linear[e] += c;
    }
    unsigned max_e = 0;
    for (const auto& [e, c] : p.terms()) max_e = std::max(max_e, e[k]);
    std::vector<Terms> pk{Terms{{Exponents(n_out, 0), Complex(1.0)}}};
    for (unsigned e = 1; e <= max_e; ++e) pk.push_back(multiply(pk.back(), linear));
    powers.push_back(std::move(pk));
  }

  ModePolynomial out(outs);
  for (const auto& [e, c] : p.terms()) {
    Terms acc{{Exponents(n_out, 0), c}};
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) acc = multiply(acc, powers[k][e[k]]);
    for (const auto& [eo, co] : acc) out.add_term(eo, co);
  }
  return out;
}

std::map<Exponents, Complex> fock_amplitudes(const ModePolynomial& p) {
  std::map<Exponents, Complex> out;
  for (const auto& [e, c] : p.terms()) out.emplace(e, c * fock_weight(e));
  return out;
}

ModePolynomial from_fock_amplitudes(std::vector<ModeLabel> modes,
                                    const std::map<Exponents, Complex>& amplitudes) {
  ModePolynomial p(std::move(modes));
  for (const auto& [e, a] : amplitudes) p.add_term(e, a / fock_weight(e));
  return p;
}

Complex inner(const ModePolynomial& p, const ModePolynomial& q) {
  if (p.modes() != q.modes()) throw ModeMismatch("inner product over different mode sets");
  Complex s{};
  const auto& small = p.size() <= q.size() ? p.terms() : q.terms();
  const auto& large = p.size() <= q.size() ? q.terms() : p.terms();
  const bool p_is_small = p.size() <= q.size();
  for (const auto& [e, c] : small) {
    auto it = large.find(e);
    if (it == large.end()) continue;
    double w = 1.0;
    for (unsigned n : e) w *= factorial(n);
    s += p_is_small ? std::conj(c) * it->second * w : std::conj(it->second) * c * w;
  }
  return s;
}

double norm_squared(const ModePolynomial& p) { return inner(p, p).real(); }

}  // namespace bosesteer
