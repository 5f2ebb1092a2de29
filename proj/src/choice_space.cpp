#include "sepchoice/choice_space.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "sepchoice/error.hpp"

namespace sepchoice {

std::size_t ChoiceSpace::n_menus(std::size_t dm) const {
  require(dm < dms.size(), Err::BadIndex, "dm index out of range");
  return dms[dm].menus.size();
}

std::size_t ChoiceSpace::menu_size(std::size_t dm, std::size_t menu) const {
  require(menu < n_menus(dm), Err::BadIndex, "menu index out of range");
  return dms[dm].menus[menu].size();
}

std::size_t ChoiceSpace::pair_count(std::size_t dm) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < n_menus(dm); ++j) n += menu_size(dm, j);
  return n;
}

std::size_t ChoiceSpace::rule_count(std::size_t dm) const {
  std::size_t n = 1;
  for (std::size_t j = 0; j < n_menus(dm); ++j) n *= menu_size(dm, j);
  return n;
}

std::size_t ChoiceSpace::menu_offset(std::size_t dm, std::size_t menu) const {
  require(menu < n_menus(dm), Err::BadIndex, "menu index out of range");
  std::size_t off = 0;
  for (std::size_t j = 0; j < menu; ++j) off += menu_size(dm, j);
  return off;
}

std::size_t ChoiceSpace::joint_pair_count() const {
  std::size_t n = 1;
  for (std::size_t t = 0; t < n_dms(); ++t) n *= pair_count(t);
  return n;
}

std::size_t ChoiceSpace::menu_path_count() const {
  std::size_t n = 1;
  for (std::size_t t = 0; t < n_dms(); ++t) n *= n_menus(t);
  return n;
}

const std::string& ChoiceSpace::label(std::size_t dm, std::size_t menu, std::size_t pos) const {
  require(pos < menu_size(dm, menu), Err::BadIndex, "position out of range");
  return dms[dm].alternatives[dms[dm].menus[menu][pos]];
}

ChoiceSpace validate_space(const RawSpace& raw) {
  require(!raw.dms.empty(), Err::NoDms, "space declares no decision makers");
  ChoiceSpace space;
  for (std::size_t t = 0; t < raw.dms.size(); ++t) {
    const RawDm& rd = raw.dms[t];
    const std::string who = "dm " + std::to_string(t);
    DmSpec dm;
    dm.alternatives = rd.alternatives;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < rd.alternatives.size(); ++i) {
      auto [it, fresh] = index.emplace(rd.alternatives[i], i);
      require(fresh, Err::DuplicateAlternative,
              who + " declares alternative '" + rd.alternatives[i] + "' twice");
    }
    require(!rd.menus.empty(), Err::EmptyMenu, who + " has no menus");
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t j = 0; j < rd.menus.size(); ++j) {
      const std::string where = who + " menu " + std::to_string(j);
      require(!rd.menus[j].empty(), Err::EmptyMenu, where + " is empty");
      std::vector<std::size_t> menu;
      std::set<std::size_t> members;
      for (const std::string& lab : rd.menus[j]) {
        auto it = index.find(lab);
        require(it != index.end(), Err::UnknownAlternative,
                where + " uses undeclared alternative '" + lab + "'");
        require(members.insert(it->second).second, Err::DuplicateAlternative,
                where + " repeats alternative '" + lab + "'");
        menu.push_back(it->second);
      }
      std::vector<std::size_t> key(members.begin(), members.end());
      require(seen.insert(key).second, Err::DuplicateMenu,
              where + " duplicates an earlier menu");
      dm.menus.push_back(std::move(menu));
    }
    space.dms.push_back(std::move(dm));
  }
  return space;
}

std::vector<DeterministicRule> enumerate_rules(const ChoiceSpace& space, std::size_t dm) {
  require(dm < space.n_dms(), Err::BadIndex, "dm index out of range");
  const std::size_t nj = space.n_menus(dm);
  std::vector<DeterministicRule> rules;
  rules.reserve(space.rule_count(dm));
  for (std::size_t c = 0; c < space.rule_count(dm); ++c) {
    DeterministicRule r{dm, std::vector<std::size_t>(nj)};
    std::size_t rem = c;
    for (std::size_t j = 0; j < nj; ++j) {
      r.picks[j] = rem % space.menu_size(dm, j);
      rem /= space.menu_size(dm, j);
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

RationalMatrix build_type_matrix(const ChoiceSpace& space, std::size_t dm) {
  auto rules = enumerate_rules(space, dm);
  RationalMatrix a(space.pair_count(dm), rules.size());
  for (std::size_t c = 0; c < rules.size(); ++c)
    for (std::size_t j = 0; j < space.n_menus(dm); ++j)
      a.at(space.menu_offset(dm, j) + rules[c].picks[j], c) = 1;
  return a;
}

RationalMatrix restrict_type_matrix(const ChoiceSpace& space, std::size_t dm,
                                    const std::vector<std::size_t>& allowed) {
  require(!allowed.empty(), Err::EmptyAllowedSet, "allowed set is empty");
  std::set<std::size_t> seen;
  for (std::size_t c : allowed) {
    require(c < space.rule_count(dm), Err::BadIndex, "allowed rule index out of range");
    require(seen.insert(c).second, Err::BadIndex, "allowed rule index repeated");
  }
  return build_type_matrix(space, dm).col_subset(allowed);
}

bool advance_profile(std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix,
                     std::size_t skip) {
  require(idx.size() == radix.size(), Err::DimensionMismatch, "odometer shape mismatch");
  for (std::size_t d = idx.size(); d-- > 0;) {
    if (d == skip) continue;
    if (++idx[d] < radix[d]) return true;
    idx[d] = 0;
  }
  return false;
}

std::size_t joint_pair_index(const ChoiceSpace& space, const MenuPath& mp, const ChoicePath& cp) {
  require(mp.size() == space.n_dms() && cp.size() == space.n_dms(), Err::DimensionMismatch,
          "path length must equal the number of DMs");
  std::size_t idx = 0;
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    require(cp[t] < space.menu_size(t, mp[t]), Err::BadIndex, "choice out of menu range");
    idx = idx * space.pair_count(t) + space.menu_offset(t, mp[t]) + cp[t];
  }
  return idx;
}

std::vector<MenuPath> all_menu_paths(const ChoiceSpace& space) {
  std::vector<MenuPath> out;
  out.reserve(space.menu_path_count());
  MenuPath mp(space.n_dms(), 0);
  for (;;) {
    out.push_back(mp);
    std::size_t t = space.n_dms();
    while (t > 0) {
      --t;
      if (++mp[t] < space.n_menus(t)) break;
      mp[t] = 0;
      if (t == 0) return out;
    }
  }
}

std::size_t menu_path_index(const ChoiceSpace& space, const MenuPath& mp) {
  require(mp.size() == space.n_dms(), Err::DimensionMismatch, "menu path length mismatch");
  std::size_t idx = 0;
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    require(mp[t] < space.n_menus(t), Err::BadIndex, "menu index out of range");
    idx = idx * space.n_menus(t) + mp[t];
  }
  return idx;
}

std::size_t choice_path_count(const ChoiceSpace& space, const MenuPath& mp) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < space.n_dms(); ++t) n *= space.menu_size(t, mp[t]);
  return n;
}

std::vector<ChoicePath> all_choice_paths(const ChoiceSpace& space, const MenuPath& mp) {
  std::vector<ChoicePath> out;
  out.reserve(choice_path_count(space, mp));
  ChoicePath cp(space.n_dms(), 0);
  for (;;) {
    out.push_back(cp);
    std::size_t t = space.n_dms();
    while (t > 0) {
      --t;
      if (++cp[t] < space.menu_size(t, mp[t])) break;
      cp[t] = 0;
      if (t == 0) return out;
    }
  }
}

std::size_t choice_path_index(const ChoiceSpace& space, const MenuPath& mp, const ChoicePath& cp) {
  require(cp.size() == space.n_dms(), Err::DimensionMismatch, "choice path length mismatch");
  std::size_t idx = 0;
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    require(cp[t] < space.menu_size(t, mp[t]), Err::BadIndex, "choice out of menu range");
    idx = idx * space.menu_size(t, mp[t]) + cp[t];
  }
  return idx;
}

}  // namespace sepchoice
