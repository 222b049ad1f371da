#include "tac/cli/app.hpp"

#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tac/common/errors.hpp"

namespace tac::cli {
namespace {

// Config file first, then flags given on the command line, then fallbacks.
KeyValueConfig merge(const CommandSpec& cmd, const std::string& config_path,
                     const std::map<std::string, std::string>& given) {
  KeyValueConfig cfg;
  if (!config_path.empty()) {
    cfg = KeyValueConfig::load(config_path);
    std::set<std::string> known;
    for (const auto& o : cmd.options) known.insert(o.key);
    for (const auto& [key, value] : cfg.values()) {
      if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "' for " + cmd.name);
    }
  }
  for (const auto& [key, value] : given) cfg.set(key, value);
  for (const auto& o : cmd.options) {
    if (!cfg.contains(o.key) && !o.fallback.empty()) cfg.set(o.key, o.fallback);
  }
  return cfg;
}

// First line of a possibly multi-line message.
std::string one_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tweet analytics for proactive edge caching", "tac"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const auto& cmds = commands();
  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::vector<std::pair<CLI::App*, const CommandSpec*>> subs;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "key = value file; flags override its entries");
    for (const auto& o : cmd.options) {
      if (o.flag) {
        sub->add_flag("--" + o.key, flags[cmd.name][o.key], o.help);
      } else {
        auto* opt = sub->add_option("--" + o.key, values[cmd.name][o.key], o.help);
        if (!o.fallback.empty()) opt->default_str(o.fallback);
      }
    }
    subs.emplace_back(sub, &cmd);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::Success&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitConfig;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      std::map<std::string, std::string> given;
      for (const auto& o : cmd->options) {
        if (sub->get_option("--" + o.key)->count() == 0) continue;
        given[o.key] = o.flag ? (flags[cmd->name][o.key] ? "true" : "false") : values[cmd->name][o.key];
      }
      cmd->action(merge(*cmd, config_path, given), out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << one_line(e.what()) << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << one_line(e.what()) << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric error: " << one_line(e.what()) << '\n';
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "data error: " << one_line(e.what()) << '\n';
    return kExitData;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace tac::cli
