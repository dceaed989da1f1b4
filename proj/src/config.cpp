// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hesseig/errors.hpp"

namespace hesseig {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Parser {
  std::vector<std::string> issues;

  bool number(const std::string& key, const std::string& value, double& out) {
    try {
      std::size_t pos = 0;
      out = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing");
      return true;
    } catch (const std::exception&) {
      issues.push_back("key '" + key + "': '" + value + "' is not a number");
      return false;
    }
  }

  bool positive(const std::string& key, const std::string& value, double& out) {
    if (!number(key, value, out)) return false;
    if (!(out > 0.0)) {
      issues.push_back("key '" + key + "': value must be positive, got " + value);
      return false;
    }
    return true;
  }

  bool integer(const std::string& key, const std::string& value, long long& out) {
    try {
      std::size_t pos = 0;
      out = std::stoll(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing");
      return true;
    } catch (const std::exception&) {
      issues.push_back("key '" + key + "': '" + value + "' is not an integer");
      return false;
    }
  }
};

}  // namespace

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << "operator = " << op.token() << "\n";
  os << "domain = " << domain.token() << "\n";
  os << "h = " << fmt(h) << "\n";
  os << "\n[solver]\n";
  os << "tol = " << fmt(solver.tol) << "\n";
  os << "max_iter = " << solver.max_iter << "\n";
  os << "shrink = " << fmt(solver.shrink) << "\n";
  os << "cone_margin = " << fmt(solver.cone_margin) << "\n";
  os << "delta_reg = " << fmt(solver.delta_reg) << "\n";
  os << "\n[eigen]\n";
  os << "tol_eig = " << fmt(tol_eig) << "\n";
  os << "blowup_cap = " << fmt(blowup_cap) << "\n";
  os << "max_refine = " << max_refine << "\n";
  os << "trials = " << trials << "\n";
  os << "\n[run]\n";
  os << "seed = " << seed << "\n";
  os << "output_dir = " << output_dir << "\n";
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  Parser p;
  bool have_operator = false, have_domain = false;

  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        p.issues.push_back("line " + std::to_string(lineno) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "solver" && section != "eigen" && section != "run") {
        p.issues.push_back("unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      p.issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qual = section.empty() ? key : section + "." + key;

    double d = 0.0;
    long long i = 0;
    if (qual == "operator") {
      try {
        cfg.op = HessianOperator::parse(value);
        have_operator = true;
      } catch (const std::exception& e) {
        p.issues.push_back(std::string("key 'operator': ") + e.what());
      }
    } else if (qual == "domain") {
      try {
        cfg.domain = DomainSpec::parse(value);
        have_domain = true;
      } catch (const std::exception& e) {
        p.issues.push_back(std::string("key 'domain': ") + e.what());
      }
    } else if (qual == "h") {
      if (p.positive("h", value, d)) cfg.h = d;
    } else if (qual == "solver.tol") {
      if (p.positive(qual, value, d)) cfg.solver.tol = d;
    } else if (qual == "solver.max_iter") {
      if (p.integer(qual, value, i)) {
        if (i < 1) {
          p.issues.push_back("key 'solver.max_iter': must be >= 1");
        } else {
          cfg.solver.max_iter = static_cast<int>(i);
        }
      }
    } else if (qual == "solver.shrink") {
      if (p.number(qual, value, d)) {
        if (!(d > 0.0 && d < 1.0)) {
          p.issues.push_back("key 'solver.shrink': must lie in (0, 1)");
        } else {
          cfg.solver.shrink = d;
        }
      }
    } else if (qual == "solver.cone_margin") {
      if (p.positive(qual, value, d)) cfg.solver.cone_margin = d;
    } else if (qual == "solver.delta_reg") {
      if (p.positive(qual, value, d)) cfg.solver.delta_reg = d;
    } else if (qual == "eigen.tol_eig") {
      if (p.positive(qual, value, d)) cfg.tol_eig = d;
    } else if (qual == "eigen.blowup_cap") {
      if (p.positive(qual, value, d)) cfg.blowup_cap = d;
    } else if (qual == "eigen.max_refine") {
      if (p.integer(qual, value, i)) cfg.max_refine = static_cast<int>(i);
    } else if (qual == "eigen.trials") {
      if (p.integer(qual, value, i)) cfg.trials = static_cast<int>(i);
    } else if (qual == "run.seed") {
      if (p.integer(qual, value, i)) cfg.seed = static_cast<std::uint64_t>(i);
    } else if (qual == "run.output_dir") {
      cfg.output_dir = value;
    } else {
      p.issues.push_back("unknown key '" + qual + "'");
    }
  }

  if (!have_operator) p.issues.push_back("missing required key 'operator'");
  if (!have_domain) p.issues.push_back("missing required key 'domain'");
  if (!p.issues.empty()) throw ConfigError(p.issues);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

}  // namespace hesseig
