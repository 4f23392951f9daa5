#ifndef DLC_TESTS_FIXTURES_HPP
#define DLC_TESTS_FIXTURES_HPP

#include <string>

#include "dlc/decision_list.hpp"
#include "dlc/io.hpp"

namespace dlc::testing {

/// ((x1,a), (x1 & !x2,b), (1,c), (x1,d), (1,e)); indices 1 and 3 are useful.
inline const char* kExampleJson = R"({"n":2,"rules":[
  {"pos":[1],"neg":[],"value":"a"},
  {"pos":[1],"neg":[2],"value":"b"},
  {"pos":[],"neg":[],"value":"c"},
  {"pos":[1],"neg":[],"value":"d"},
  {"pos":[],"neg":[],"value":"e"}]})";

inline DecisionList example_list() { return parse_decision_list(kExampleJson); }

/// ((x1,"1"), (1,"0")) over n variables (extra variables are dummies).
inline DecisionList single_literal_list(unsigned n = 1) {
  return DecisionList(n, {{Term({1}, {}), "1"}, {Term{}, "0"}});
}

inline DecisionList constant_list(unsigned n = 0, std::string value = "z") {
  return DecisionList(n, {{Term{}, std::move(value)}});
}

}  // namespace dlc::testing

#endif  // DLC_TESTS_FIXTURES_HPP
