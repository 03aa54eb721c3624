#include "realdyn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "realdyn/errors.hpp"

namespace realdyn {

int RunConfig::effective_threads() const {
  if (threads > 0) return threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "depth=" << depth << "\n"
     << "tolerance=" << tolerance << "\n"
     << "max_iter=" << max_iter << "\n"
     << "threads=" << threads << "\n"
     << "seed=" << seed << "\n";
  return os.str();
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  RunConfig cfg = base;
  std::ifstream in(path);
  if (!in) return cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto is_blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (is_blank) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(lineno, "config line without '=' in " + path);
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(key);
    trim(val);
    try {
      if (key == "depth") cfg.depth = std::stoi(val);
      else if (key == "tolerance") cfg.tolerance = std::stod(val);
      else if (key == "max_iter") cfg.max_iter = std::stol(val);
      else if (key == "threads") cfg.threads = std::stoi(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else throw SyntaxError(lineno, "unknown config key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw SyntaxError(lineno, "bad value for '" + key + "'");
    }
  }
  if (cfg.depth <= 0 || cfg.max_iter <= 0 || cfg.tolerance <= 0 || cfg.threads < 0)
    throw SyntaxError(0, "config values must be positive");
  return cfg;
}

RunConfig load_environment(const RunConfig& base) {
  RunConfig cfg = load_config_file("realdyn.conf", base);
  if (const char* t = std::getenv("REALDYN_THREADS")) {
    try {
      cfg.threads = std::stoi(t);
    } catch (...) {
      throw SyntaxError(0, "REALDYN_THREADS is not an integer");
    }
  }
  return cfg;
}

}  // namespace realdyn
