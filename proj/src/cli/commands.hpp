#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tac/common/kv_config.hpp"

namespace tac::cli {

struct OptionSpec {
  std::string key;  // also the flag name: --<key>
  std::string help;
  std::string fallback;  // shown in --help; empty means required or unset
  bool flag = false;     // boolean switch, stored as "true"
};

using CommandAction = std::function<void(const KeyValueConfig&, std::ostream&)>;

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<OptionSpec> options;
  CommandAction action;
};

// Every subcommand in help order.
const std::vector<CommandSpec>& commands();

}  // namespace tac::cli
