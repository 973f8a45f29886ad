#include "gradedlc/window.hpp"

#include <stdexcept>

namespace gradedlc {

WindowModule WindowModule::zero(std::size_t n, Coefficients c, const Integer& l) {
  WindowModule w;
  w.n = n;
  w.coefficients = c;
  w.characteristic = l;
  const std::size_t classes = std::size_t{1} << n;
  w.groups.assign(classes, FinAbGroup{});
  w.actions.assign(classes, std::vector<GroupMap>(n));
  for (std::size_t s = 0; s < classes; ++s)
    for (std::size_t i = 1; i <= n; ++i)
      if (s & variable_bit(i)) w.actions[s][i - 1] = GroupMap::zero(FinAbGroup{}, FinAbGroup{});
  return w;
}

const GroupMap& WindowModule::action(Mask sigma, std::size_t i) const {
  if ((sigma & variable_bit(i)) == 0) throw std::invalid_argument("action: variable not in the class");
  return actions[sigma][i - 1];
}

bool WindowModule::is_zero() const {
  for (const auto& g : groups)
    if (!g.is_zero()) return false;
  return true;
}

namespace {

template <class Get>
void check_squares(std::size_t n, std::size_t classes, Get get, bool reversed) {
  for (std::size_t s = 0; s < classes; ++s)
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const Mask sig = static_cast<Mask>(s);
        if (!(sig & variable_bit(i)) || !(sig & variable_bit(j))) continue;
        const Mask si = sig & ~variable_bit(i), sj = sig & ~variable_bit(j);
        GroupMap a = reversed ? compose(get(sig, i), get(si, j)) : compose(get(si, j), get(sig, i));
        GroupMap b = reversed ? compose(get(sig, j), get(sj, i)) : compose(get(sj, i), get(sig, j));
        if (!(a == b))
          throw std::invalid_argument("window module: action square does not commute at class " + mask_str(sig));
      }
}

}  // namespace

void WindowModule::validate() const {
  const std::size_t classes = std::size_t{1} << n;
  if (groups.size() != classes || actions.size() != classes) throw std::invalid_argument("window module: wrong class count");
  for (std::size_t s = 0; s < classes; ++s) {
    const Mask sig = static_cast<Mask>(s);
    if (coefficients == Coefficients::mod_prime) {
      if (groups[s].free_rank != 0) throw std::invalid_argument("window module: free piece in a mod-l module");
      for (const auto& t : groups[s].torsion)
        if (t != characteristic) throw std::invalid_argument("window module: piece is not an F_l vector space");
    }
    for (std::size_t i = 1; i <= n; ++i) {
      if (!(sig & variable_bit(i))) continue;
      const GroupMap& u = actions[s][i - 1];
      if (!(u.source == groups[s]) || !(u.target == groups[sig & ~variable_bit(i)]))
        throw std::invalid_argument("window module: action endpoints do not match the pieces");
    }
  }
  check_squares(n, classes, [this](Mask s, std::size_t i) -> const GroupMap& { return action(s, i); }, false);
}

const GroupMap& MixedWindowModule::dual_action(Mask sigma, std::size_t i) const {
  if ((sigma & variable_bit(i)) == 0) throw std::invalid_argument("dual_action: variable not in the class");
  return dual_actions[sigma][i - 1];
}

bool MixedWindowModule::is_zero() const {
  for (const auto& g : groups)
    if (!g.is_zero()) return false;
  return true;
}

void MixedWindowModule::validate() const {
  const std::size_t classes = std::size_t{1} << n;
  if (groups.size() != classes || duals.size() != classes || dual_actions.size() != classes)
    throw std::invalid_argument("mixed window module: wrong class count");
  for (std::size_t s = 0; s < classes; ++s) {
    if (!(groups[s] == MixedAbGroup::from_dual(duals[s], p, trunc_exponent)))
      throw std::invalid_argument("mixed window module: piece disagrees with its dual");
    const Mask sig = static_cast<Mask>(s);
    for (std::size_t i = 1; i <= n; ++i) {
      if (!(sig & variable_bit(i))) continue;
      const GroupMap& u = dual_actions[s][i - 1];
      if (!(u.target == duals[s]) || !(u.source == duals[sig & ~variable_bit(i)]))
        throw std::invalid_argument("mixed window module: dual action endpoints do not match");
    }
  }
  check_squares(n, classes, [this](Mask s, std::size_t i) -> const GroupMap& { return dual_action(s, i); }, true);
}

}  // namespace gradedlc
