#ifndef REALDYN_CONFIG_HPP
#define REALDYN_CONFIG_HPP

#include <string>

namespace realdyn {

// line-oriented key=value configuration with '#' comments
struct RunConfig {
  int depth = 12;
  double tolerance = 0.02;
  long max_iter = 100000;
  int threads = 0;  // 0 = machine parallelism
  unsigned long long seed = 0;

  int effective_threads() const;
  std::string serialize() const;
};

RunConfig load_config_file(const std::string& path, const RunConfig& base = {});
// config file (if present), then REALDYN_THREADS, in that order
RunConfig load_environment(const RunConfig& base = {});

}  // namespace realdyn

#endif
