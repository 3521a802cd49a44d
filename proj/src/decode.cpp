#include "sgt/decode.hpp"

#include <algorithm>
#include <numeric>

#include "sgt/error.hpp"

namespace sgt {

DecodeResult cover_decode(const CodeMatrix& m, const Outcome& y, std::size_t nu) {
  if (y.size() != m.tests())
    throw Error(Errc::LengthMismatch,
                "outcome has " + std::to_string(y.size()) + " bits, matrix has " + std::to_string(m.tests()) + " rows");
  const std::size_t threshold = (nu + 1) / 2 + 1;
  DecodeResult result;
  result.method = DecodeMethod::Cover;
  for (std::size_t j = 0; j < m.items(); ++j) {
    if (popcount_andnot(m.column_words(j), y.words()) < threshold) result.items.push_back(j);
  }
  result.columns_scanned = m.items();
  return result;
}

std::vector<Element> lagrange_interpolate(const Field& field, std::span<const Element> xs,
                                          std::span<const Element> ys) {
  const std::size_t k = xs.size();
  if (ys.size() != k) throw Error(Errc::LengthMismatch, "interpolation points and values differ in count");
  // master(x) = prod_j (x - x_j), low-order first, degree k
  std::vector<Element> master(k + 1, 0);
  master[0] = 1;
  for (std::size_t j = 0; j < k; ++j) {
    // master *= (x - x_j); master[j + 1] is still zero here
    const Element root = field.neg(xs[j]);
    for (std::size_t e = j + 1; e > 0; --e) master[e] = field.add(master[e - 1], field.mul(master[e], root));
    master[0] = field.mul(master[0], root);
  }
  std::vector<Element> coeffs(k, 0);
  std::vector<Element> basis(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (ys[i] == 0) continue;
    // basis = master / (x - x_i) by synthetic division
    Element carry = 0;
    for (std::size_t e = k; e-- > 0;) {
      carry = field.add(master[e + 1], field.mul(carry, xs[i]));
      basis[e] = carry;
    }
    const Element denom = field.poly_eval(basis, xs[i]);
    const Element scale = field.mul(ys[i], field.inv(denom));
    for (std::size_t e = 0; e < k; ++e) coeffs[e] = field.add(coeffs[e], field.mul(scale, basis[e]));
  }
  return coeffs;
}

KsListDecoder::KsListDecoder(const CodePlan& plan) : plan_(plan), field_(plan.kind == PlanKind::KautzSingleton ? plan.q : 2) {
  if (plan.kind != PlanKind::KautzSingleton)
    throw Error(Errc::PlanMismatch, "list recovery needs a KautzSingleton plan, got " + std::string(to_string(plan.kind)));
  validate(plan);
  if (plan.t_q < plan.k_q) throw Error(Errc::InvalidArgument, "list recovery needs t_q >= k_q");
}

DecodeResult KsListDecoder::decode(const Outcome& y, std::size_t nu) const {
  const std::size_t q = plan_.q;
  const std::size_t t_q = plan_.t_q;
  const std::size_t k_q = plan_.k_q;
  if (y.size() != q * t_q)
    throw Error(Errc::LengthMismatch,
                "outcome has " + std::to_string(y.size()) + " bits, plan has t = " + std::to_string(q * t_q));
  if (nu > 0 && t_q < k_q + nu)
    throw Error(Errc::InvalidArgument, "noisy list recovery needs t_q - nu >= k_q");

  DecodeResult result;
  result.method = DecodeMethod::ListRecovery;

  // Symbol list of each block, one pass over the set bits of y.
  std::vector<std::vector<Element>> lists(t_q);
  for_each_set_bit(y.words(), [&](std::size_t pos) { lists[pos / q].push_back(static_cast<Element>(pos % q)); });

  const std::size_t need = t_q - nu;
  std::vector<Element> xs(k_q);
  std::vector<Element> ys(k_q);
  std::vector<std::size_t> pick(k_q);

  auto try_blocks = [&](std::span<const std::size_t> blocks) {
    for (std::size_t b : blocks)
      if (lists[b].empty()) return;
    for (std::size_t k = 0; k < k_q; ++k) xs[k] = static_cast<Element>(blocks[k]);
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      for (std::size_t k = 0; k < k_q; ++k) ys[k] = lists[blocks[k]][pick[k]];
      const auto coeffs = lagrange_interpolate(field_, xs, ys);
      ++result.candidates_interpolated;

      std::uint64_t index = 0;
      for (std::size_t e = k_q; e-- > 0;) index = index * q + coeffs[e];
      if (index < plan_.n) {
        std::size_t agree = 0;
        for (std::size_t b = 0; b < t_q && agree + (t_q - b) >= need; ++b)
          if (y.test(b * q + field_.poly_eval(coeffs, static_cast<Element>(b)))) ++agree;
        if (agree >= need) result.items.push_back(static_cast<std::size_t>(index));
      }

      std::size_t k = 0;
      while (k < k_q && ++pick[k] == lists[blocks[k]].size()) pick[k++] = 0;
      if (k == k_q) break;
    }
  };

  if (nu == 0) {
    // A noiseless defective is consistent with every block, so the k_q
    // shortest lists suffice.
    std::vector<std::size_t> order(t_q);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lists[a].size() < lists[b].size(); });
    std::vector<std::size_t> blocks(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_q));
    std::sort(blocks.begin(), blocks.end());
    try_blocks(blocks);
  } else {
    std::vector<std::size_t> blocks(k_q);
    std::iota(blocks.begin(), blocks.end(), std::size_t{0});
    for (;;) {
      try_blocks(blocks);
      std::size_t k = k_q;
      while (k > 0 && blocks[k - 1] == t_q - k_q + (k - 1)) --k;
      if (k == 0) break;
      ++blocks[k - 1];
      for (std::size_t r = k; r < k_q; ++r) blocks[r] = blocks[r - 1] + 1;
    }
  }

  std::sort(result.items.begin(), result.items.end());
  result.items.erase(std::unique(result.items.begin(), result.items.end()), result.items.end());
  return result;
}

DecodeResult ks_list_decode(const CodePlan& plan, const Outcome& y, std::size_t nu) {
  return KsListDecoder(plan).decode(y, nu);
}

}  // namespace sgt
