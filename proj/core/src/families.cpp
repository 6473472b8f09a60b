#include "pcr/families.hpp"

namespace pcr {

namespace {

std::vector<Formula> vars(const std::string& prefix, unsigned count) {
  std::vector<Formula> out;
  for (unsigned i = 1; i <= count; ++i) out.push_back(Formula::atom(prefix + std::to_string(i)));
  return out;
}

Formula r_of(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  std::vector<Formula> args = a;
  args.insert(args.end(), b.begin(), b.end());
  return Formula::rapp(std::move(args));
}

}  // namespace

Formula wphp(unsigned n) {
  if (n == 0) throw Error("wphp: n must be at least 1");
  const auto p = vars("p", 2 * n);
  const auto q = vars("q", 2 * n);
  const auto r = vars("r", n);
  const auto s = vars("s", n);

  std::vector<Formula> differ;
  for (unsigned i = 0; i < 2 * n; ++i) differ.push_back(Formula::negation(iff(p[i], q[i])));
  Formula collision = Formula::conj(Formula::conj(disj_all(differ), r_of(p, r)), r_of(q, r));
  Formula unmapped = Formula::negation(r_of(p, s));
  for (auto it = s.rbegin(); it != s.rend(); ++it) unmapped = Formula::forall(it->name(), unmapped);

  Formula body = Formula::disj(collision, unmapped);
  for (auto it = r.rbegin(); it != r.rend(); ++it) body = Formula::exists(it->name(), body);
  for (auto it = q.rbegin(); it != q.rend(); ++it) body = Formula::exists(it->name(), body);
  for (auto it = p.rbegin(); it != p.rend(); ++it) body = Formula::exists(it->name(), body);
  return body;
}

}  // namespace pcr
