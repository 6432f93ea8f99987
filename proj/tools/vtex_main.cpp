// vtex: analyze a clip, synthesize a looping texture, or re-render heatmaps.
#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vtex/vtex.h"

namespace {

struct ConfigDeleter {
  void operator()(vtex_config* c) const { vtex_config_free(c); }
};
using ConfigPtr = std::unique_ptr<vtex_config, ConfigDeleter>;

std::string config_value(const vtex_config* cfg, const std::string& key) {
  std::size_t need = 0;
  vtex_config_get(cfg, key.c_str(), nullptr, 0, &need);
  std::string v(need, '\0');
  vtex_config_get(cfg, key.c_str(), v.data(), v.size(), nullptr);
  if (!v.empty()) v.pop_back();
  return v;
}

std::string flag_name(std::string key) {
  for (auto& c : key) {
    if (c == '_') c = '-';
  }
  return "--" + key;
}

int report(vtex_status s) {
  if (s != VTEX_OK) {
    std::fprintf(stderr, "vtex: error [%s]: %s\n", vtex_status_name(s), vtex_last_error());
  }
  return static_cast<int>(s);
}

// Flag values given on the command line, keyed by config key.
struct Overrides {
  std::map<std::string, std::string> text;
  std::map<std::string, bool> flags;
  std::map<std::string, CLI::Option*> options;
};

void add_config_options(CLI::App& cmd, const vtex_config* defaults, Overrides& ov) {
  const std::size_t n = vtex_config_key_count();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string key = vtex_config_key_name(i);
    const std::string help = vtex_config_key_help(i);
    const std::string def = config_value(defaults, key);
    const std::string flag = flag_name(key);
    CLI::Option* opt = nullptr;
    if (key == "normalize") {
      opt = cmd.add_flag(flag + ",!--no-normalize", ov.flags[key], help);
    } else if (key == "loop_forever") {
      opt = cmd.add_flag(flag + ",!--no-loop", ov.flags[key], help);
    } else {
      std::string names = flag;
      if (key == "input") names = "-i," + flag;
      if (key == "output") names = "-o," + flag;
      opt = cmd.add_option(names, ov.text[key], help);
    }
    opt->default_str(def.empty() ? "\"\"" : def);
    ov.options[key] = opt;
  }
}

vtex_status apply(vtex_config* cfg, const std::string& config_file, const Overrides& ov) {
  if (!config_file.empty()) {
    if (const vtex_status s = vtex_config_load_file(cfg, config_file.c_str()); s != VTEX_OK) {
      return s;
    }
  }
  for (const auto& [key, opt] : ov.options) {
    if (opt->count() == 0) continue;
    std::string value;
    if (auto f = ov.flags.find(key); f != ov.flags.end()) {
      value = f->second ? "true" : "false";
    } else {
      value = ov.text.at(key);
    }
    if (const vtex_status s = vtex_config_set(cfg, key.c_str(), value.c_str()); s != VTEX_OK) {
      return s;
    }
  }
  return VTEX_OK;
}

}  // namespace

int main(int argc, char** argv) {
  vtex_config* raw_defaults = nullptr;
  if (vtex_config_create(&raw_defaults) != VTEX_OK) return report(VTEX_ERR_INTERNAL);
  const ConfigPtr defaults(raw_defaults);

  CLI::App app{"Video textures: find seamless loops and transitions in short clips."};
  app.set_version_flag("--version", std::string(vtex_version()));
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    vtex_status (*run)(const vtex_config*);
  };
  const Command commands[] = {
      {"analyze", "compute distance and probability matrices, write heatmaps and summary.json",
       vtex_run_analyze},
      {"synthesize", "render a looping or randomly played GIF plus its index sequence JSON",
       vtex_run_synthesize},
      {"visualize", "re-render heatmaps from the cached analysis", vtex_run_visualize},
  };

  std::vector<Overrides> overrides(std::size(commands));
  std::vector<std::string> config_files(std::size(commands));
  std::vector<std::string> save_files(std::size(commands));
  std::vector<CLI::App*> subs;
  for (std::size_t c = 0; c < std::size(commands); ++c) {
    CLI::App* sub = app.add_subcommand(commands[c].name, commands[c].help);
    sub->add_option("-c,--config", config_files[c], "key = value config file; flags override it");
    sub->add_option("--save-config", save_files[c], "write the effective config to this file");
    add_config_options(*sub, defaults.get(), overrides[c]);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return VTEX_ERR_INVALID_ARGUMENT;
  }

  for (std::size_t c = 0; c < subs.size(); ++c) {
    if (!subs[c]->parsed()) continue;
    vtex_config* raw_cfg = nullptr;
    if (vtex_config_create(&raw_cfg) != VTEX_OK) return report(VTEX_ERR_INTERNAL);
    const ConfigPtr cfg(raw_cfg);
    if (const vtex_status s = apply(cfg.get(), config_files[c], overrides[c]); s != VTEX_OK) {
      return report(s);
    }
    if (!save_files[c].empty()) {
      if (const vtex_status s = vtex_config_save_file(cfg.get(), save_files[c].c_str());
          s != VTEX_OK) {
        return report(s);
      }
    }
    return report(commands[c].run(cfg.get()));
  }
  return report(VTEX_ERR_INVALID_ARGUMENT);
}
