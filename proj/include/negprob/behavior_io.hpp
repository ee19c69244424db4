#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negprob/scenario.hpp"

namespace negprob {

// Behavior text format:
//
//   scenario: 2,2;2,2
//   settings=0,0 outcomes=0,0 p=1/2
//   ...
//
// One line per nonzero entry; omitted entries are 0. Blank lines and lines
// starting with '#' are ignored. Parsing rejects tables that are not
// normalized for every joint setting.
std::string format_behavior(const Behavior& behavior);
Behavior parse_behavior(std::string_view text);

// Several behaviors separated by a line containing only "---".
inline constexpr std::string_view kRecordSeparator = "---";
std::string format_behavior_list(std::span<const Behavior> behaviors);
std::vector<Behavior> parse_behavior_list(std::string_view text);

// Quasi-distribution text format (witness files):
//
//   scenario: 2,2;2,2
//   atom=0,1,1,0 p=-1/2
//
// `atom` lists one outcome per (party, setting) slot in atom-index order.
std::string format_jqpd(const QuasiDistribution& jqpd);
QuasiDistribution parse_jqpd(std::string_view text);

}  // namespace negprob
