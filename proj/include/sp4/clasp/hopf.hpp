#pragma once

#include "sp4/clasp/clasp.hpp"

namespace sp4::clasp {

namespace detail {

/// Projector onto a label, carried by single strands: P_n for (n, 0), and
/// (split merge) / bigon for (0, 1), which closes up to a double strand.
inline std::pair<int, WebSum> cable(const ClaspLabel& l) {
  if (l.b == 0) return {l.a, clasp_expand(l.a)};
  if (l.a == 0 && l.b == 1) {
    const Web u = compose(layers::split_at(2, 0), layers::merge_at(2, 0));
    WebSum s;
    s.add(RationalFunction(1) / RationalFunction(constants::bigon_single()), u);
    return {2, s};
  }
  throw InvalidInput("Hopf link components must be (n,0) or (0,1)");
}

/// Positive braid passing a block of m strands (right) fully around a block
/// of n strands (left).
inline std::vector<int> block_twist(int n, int m) {
  std::vector<int> word;
  auto pass = [&](int left, int right) {
    for (int j = 0; j < right; ++j)
      for (int i = left + j; i >= j + 1; --i) word.push_back(i);
  };
  pass(n, m);
  pass(m, n);
  return word;
}

}  // namespace detail

/// Zero-framed Hopf link with components labelled l and m, evaluated by the
/// engine: each component is a cable of single strands through its projector,
/// the second cable winds once around the first, and crossings are resolved
/// one at a time.
inline RationalFunction hopf_link(const ClaspLabel& l, const ClaspLabel& m) {
  const auto [n1, p1] = detail::cable(l);
  const auto [n2, p2] = detail::cable(m);
  WebSum s = tensor(p1, p2);
  for (int letter : detail::block_twist(n1, n2))
    s = reduce(compose(resolve_crossings(webs::braid(n1 + n2, {letter})), s));
  return eval_closed(trace(s));
}

}  // namespace sp4::clasp
