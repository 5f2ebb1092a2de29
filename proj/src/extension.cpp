#include "sepchoice/extension.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "sepchoice/error.hpp"

namespace sepchoice {

KMarginalizableTest::KMarginalizableTest(const ChoiceSpace& space, std::size_t k, bool on_average)
    : base_(space),
      k_(k),
      on_average_(on_average),
      rhs_scale_(on_average ? static_cast<long>(k) : 1) {
  require(space.n_dms() == 2, Err::NotTwoDms, "extension test needs exactly two DMs");
  require(k >= 1, Err::BadIndex, "at least one copy is required");

  ext_.dms.push_back(space.dms[0]);
  for (std::size_t j = 0; j < k_; ++j) ext_.dms.push_back(space.dms[1]);
  const std::size_t T = ext_.n_dms();

  auto ext_paths = all_menu_paths(ext_);
  std::vector<std::vector<ChoicePath>> ext_cps(ext_paths.size());
  var_offset_.resize(ext_paths.size());
  for (std::size_t p = 0; p < ext_paths.size(); ++p) {
    var_offset_[p] = nvars_;
    ext_cps[p] = all_choice_paths(ext_, ext_paths[p]);
    nvars_ += ext_cps[p].size();
  }
  auto var_of = [&](const MenuPath& mp, const ChoicePath& cp) {
    return var_offset_[menu_path_index(ext_, mp)] + choice_path_index(ext_, mp, cp);
  };

  std::vector<RationalVector> rows;

  // every extended menu path carries total mass one
  for (std::size_t p = 0; p < ext_paths.size(); ++p) {
    RationalVector row(nvars_);
    for (std::size_t c = 0; c < ext_cps[p].size(); ++c) row[var_offset_[p] + c] = 1;
    rows.push_back(std::move(row));
    full_tags_.push_back(Tag{0});
  }

  // marginality: swapping one coordinate's menu leaves the rest's mass intact
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<std::size_t> menu_radix(T);
    for (std::size_t s = 0; s < T; ++s) menu_radix[s] = ext_.n_menus(s);
    for (std::size_t u = 0; u < ext_.n_menus(t); ++u)
      for (std::size_t v = u + 1; v < ext_.n_menus(t); ++v) {
        MenuPath menus(T, 0);
        do {
          std::vector<std::size_t> choice_radix(T, 1);
          for (std::size_t s = 0; s < T; ++s)
            if (s != t) choice_radix[s] = ext_.menu_size(s, menus[s]);
          ChoicePath choices(T, 0);
          do {
            RationalVector row(nvars_);
            MenuPath mp = menus;
            ChoicePath cp = choices;
            mp[t] = u;
            for (std::size_t a = 0; a < ext_.menu_size(t, u); ++a) {
              cp[t] = a;
              row[var_of(mp, cp)] += 1;
            }
            mp[t] = v;
            for (std::size_t a = 0; a < ext_.menu_size(t, v); ++a) {
              cp[t] = a;
              row[var_of(mp, cp)] -= 1;
            }
            rows.push_back(std::move(row));
            full_tags_.push_back(Tag{1});
          } while (advance_profile(choices, choice_radix, t));
        } while (advance_profile(menus, menu_radix, t));
      }
  }

  // reproduction through each copy, the other copies summed out at menu 0
  auto base_paths = all_menu_paths(base_);
  for (std::size_t bp = 0; bp < base_paths.size(); ++bp) {
    auto base_cps = all_choice_paths(base_, base_paths[bp]);
    for (std::size_t bc = 0; bc < base_cps.size(); ++bc) {
      RationalVector avg_row(nvars_);
      for (std::size_t j = 1; j <= k_; ++j) {
        RationalVector row(nvars_);
        MenuPath mp(T, 0);
        mp[0] = base_paths[bp][0];
        mp[j] = base_paths[bp][1];
        ChoicePath cp(T, 0);
        cp[0] = base_cps[bc][0];
        cp[j] = base_cps[bc][1];
        std::vector<std::size_t> others;
        for (std::size_t s = 1; s <= k_; ++s)
          if (s != j) others.push_back(s);
        std::vector<std::size_t> idx(others.size(), 0), radix(others.size());
        for (std::size_t i = 0; i < others.size(); ++i) radix[i] = ext_.menu_size(others[i], 0);
        do {
          for (std::size_t i = 0; i < others.size(); ++i) cp[others[i]] = idx[i];
          row[var_of(mp, cp)] += 1;
        } while (advance_profile(idx, radix));
        if (on_average_) {
          for (std::size_t i = 0; i < nvars_; ++i) avg_row[i] += row[i];
        } else {
          rows.push_back(std::move(row));
          full_tags_.push_back(Tag{2, bp, bc});
        }
      }
      if (on_average_) {
        rows.push_back(std::move(avg_row));
        full_tags_.push_back(Tag{2, bp, bc});
      }
    }
  }

  // quotient by the copy permutations: a variable's class is fixed by the
  // first DM's cell plus the multiset of copy cells
  col_orbit_.resize(nvars_);
  std::map<std::vector<std::size_t>, std::size_t> orbit_ids;
  for (std::size_t p = 0; p < ext_paths.size(); ++p)
    for (std::size_t c = 0; c < ext_cps[p].size(); ++c) {
      std::vector<std::pair<std::size_t, std::size_t>> copies;
      for (std::size_t s = 1; s <= k_; ++s)
        copies.emplace_back(ext_paths[p][s], ext_cps[p][c][s]);
      std::sort(copies.begin(), copies.end());
      std::vector<std::size_t> key{ext_paths[p][0], ext_cps[p][c][0]};
      for (const auto& [m, a] : copies) {
        key.push_back(m);
        key.push_back(a);
      }
      auto [it, fresh] = orbit_ids.try_emplace(std::move(key), orbit_ids.size());
      col_orbit_[var_offset_[p] + c] = it->second;
    }
  const std::size_t nq = orbit_ids.size();

  std::map<std::pair<RationalVector, Tag>, std::size_t> row_ids;
  std::vector<RationalVector> qrows;
  row_group_.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RationalVector q(nq);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (sgn(rows[r][i]) != 0) q[col_orbit_[i]] += rows[r][i];
    auto [it, fresh] = row_ids.try_emplace({std::move(q), full_tags_[r]}, qrows.size());
    if (fresh) {
      qrows.push_back(it->first.first);
      quotient_tags_.push_back(full_tags_[r]);
      group_size_.push_back(0);
    }
    row_group_[r] = it->second;
    ++group_size_[it->second];
  }
  quotient_ = RationalMatrix::from_rows(qrows);
  full_ = RationalMatrix::from_rows(rows);
  prepared_.emplace(quotient_);
}

std::size_t KMarginalizableTest::quotient_variable_count() const { return quotient_.cols(); }

RationalVector KMarginalizableTest::full_rhs(const JointChoiceRule& rule) const {
  RationalVector b(full_tags_.size());
  for (std::size_t r = 0; r < full_tags_.size(); ++r) {
    const Tag& tag = full_tags_[r];
    if (tag.kind == 0) b[r] = 1;
    else if (tag.kind == 2) b[r] = rhs_scale_ * rule.probs[tag.mp][tag.cp];
  }
  return b;
}

RationalVector KMarginalizableTest::quotient_rhs(const JointChoiceRule& rule) const {
  RationalVector b(quotient_tags_.size());
  for (std::size_t r = 0; r < quotient_tags_.size(); ++r) {
    const Tag& tag = quotient_tags_[r];
    if (tag.kind == 0) b[r] = 1;
    else if (tag.kind == 2) b[r] = rhs_scale_ * rule.probs[tag.mp][tag.cp];
  }
  return b;
}

FeasibilityResult KMarginalizableTest::solve(const JointChoiceRule& rule) const {
  require(rule.space.dms == base_.dms, Err::DimensionMismatch,
          "rule space differs from the test's construction space");
  require(rule.probs.size() == base_.menu_path_count(), Err::DimensionMismatch,
          "rule does not cover the space");

  auto res = prepared_->solve(quotient_rhs(rule));
  if (auto* f = std::get_if<Feasible>(&res)) {
    RationalVector x(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) x[i] = f->witness[col_orbit_[i]];
    require(check_witness(full_, full_rhs(rule), x), Err::Internal,
            "expanded extension witness failed verification");
    return Feasible{std::move(x)};
  }
  const auto& fk = std::get<Infeasible>(res).farkas;
  RationalVector y(full_.rows());
  for (std::size_t r = 0; r < full_.rows(); ++r) {
    std::size_t g = row_group_[r];
    y[r] = fk[g] / Rational(static_cast<long>(group_size_[g]));
  }
  require(check_farkas(full_, full_rhs(rule), y), Err::Internal,
          "expanded impossibility witness failed verification");
  return Infeasible{std::move(y)};
}

bool KMarginalizableTest::verify_witness(const JointChoiceRule& rule,
                                         const RationalVector& w) const {
  require(rule.space.dms == base_.dms, Err::DimensionMismatch,
          "rule space differs from the test's construction space");
  return w.size() == nvars_ && check_witness(full_, full_rhs(rule), w);
}

bool KMarginalizableTest::verify_farkas(const JointChoiceRule& rule,
                                        const RationalVector& y) const {
  require(rule.space.dms == base_.dms, Err::DimensionMismatch,
          "rule space differs from the test's construction space");
  return y.size() == full_.rows() && check_farkas(full_, full_rhs(rule), y);
}

FeasibilityResult check_k_marginalizable(const JointChoiceRule& rule, std::size_t k,
                                         bool on_average) {
  return KMarginalizableTest(rule.space, k, on_average).solve(rule);
}

}  // namespace sepchoice
