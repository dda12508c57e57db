#include "covrep/report.hpp"

#include <algorithm>

namespace covrep {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "FAIL";
    case Verdict::HypothesisFailed: return "hypothesis-failed";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Info: return "info";
  }
  return "unknown";
}

CheckItem& CheckReport::add(std::string name, std::string anchor,
                            Verdict verdict, double value) {
  items.push_back(CheckItem{std::move(name), std::move(anchor), verdict, value, {}});
  return items.back();
}

CheckItem& CheckReport::add_residual(std::string name, std::string anchor,
                                     double residual) {
  return add(std::move(name), std::move(anchor),
             residual <= tol ? Verdict::Pass : Verdict::Fail, residual);
}

void CheckReport::append(const CheckReport& other) {
  items.insert(items.end(), other.items.begin(), other.items.end());
}

bool CheckReport::has_fail() const {
  return std::any_of(items.begin(), items.end(),
                     [](const CheckItem& i) { return i.verdict == Verdict::Fail; });
}

bool CheckReport::all_pass() const { return !has_fail(); }

const CheckItem* CheckReport::find(const std::string& name) const {
  for (const CheckItem& i : items)
    if (i.name == name) return &i;
  return nullptr;
}

}  // namespace covrep
