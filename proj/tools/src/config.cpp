/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/cli/config.hpp"

#include <fstream>

#include "kvqe/error.hpp"

namespace kvqe::cli {

namespace {

std::filesystem::path resolve(const std::filesystem::path &p, const std::filesystem::path &base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

} // namespace

RunConfig parse_config(const nlohmann::json &doc, const std::filesystem::path &base_dir) {
  if (!doc.is_object())
    throw ParseError("config must be a JSON object");
  RunConfig cfg;
  try {
    if (doc.contains("integrals")) {
      const auto &v = doc.at("integrals");
      if (v.is_string())
        cfg.integrals.push_back(resolve(v.get<std::string>(), base_dir));
      else
        for (const auto &p : v)
          cfg.integrals.push_back(resolve(p.get<std::string>(), base_dir));
    }
    if (doc.contains("variant"))
      cfg.variant = parse_variant(doc.at("variant").get<std::string>());
    if (doc.contains("momentum_filter"))
      cfg.momentum_filter = doc.at("momentum_filter").get<bool>();
    if (doc.contains("optimizer")) {
      const auto &o = doc.at("optimizer");
      cfg.optimizer.gradient_tolerance =
          o.value("gradient_tolerance", cfg.optimizer.gradient_tolerance);
      cfg.optimizer.max_iterations = o.value("max_iterations", cfg.optimizer.max_iterations);
      cfg.optimizer.c1 = o.value("c1", cfg.optimizer.c1);
      cfg.optimizer.c2 = o.value("c2", cfg.optimizer.c2);
    }
    if (doc.contains("output_dir"))
      cfg.output_dir = resolve(doc.at("output_dir").get<std::string>(), base_dir);
    if (doc.contains("tasks"))
      for (const auto &t : doc.at("tasks")) {
        const auto name = t.get<std::string>();
        if (!kKnownTasks.count(name))
          throw ParseError("unknown task '" + name + "'");
        cfg.tasks.insert(name);
      }
    if (doc.contains("seed"))
      cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.init_scale = doc.value("init_scale", cfg.init_scale);
    cfg.jobs = doc.value("jobs", cfg.jobs);
    cfg.plot = doc.value("plot", cfg.plot);
    if (doc.contains("input"))
      cfg.input = resolve(doc.at("input").get<std::string>(), base_dir);
    cfg.use_hf = doc.value("use_hf", cfg.use_hf);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid config: ") + e.what());
  }
  if (cfg.optimizer.gradient_tolerance <= 0.0 || cfg.optimizer.max_iterations < 0)
    throw ParseError("optimizer tolerance must be positive and max_iterations non-negative");
  if (cfg.jobs < 1)
    throw ParseError("jobs must be at least 1");
  return cfg;
}

RunConfig load_config(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in)
    throw ParseError("cannot open config " + file.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError("config " + file.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, file.parent_path());
}

nlohmann::json to_json(const RunConfig &cfg) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto &p : cfg.integrals)
    files.push_back(p.string());
  nlohmann::json doc = {
      {"integrals", files},
      {"variant", to_string(cfg.variant)},
      {"momentum_filter", cfg.effective_momentum_filter()},
      {"optimizer",
       {{"gradient_tolerance", cfg.optimizer.gradient_tolerance},
        {"max_iterations", cfg.optimizer.max_iterations},
        {"c1", cfg.optimizer.c1},
        {"c2", cfg.optimizer.c2}}},
      {"output_dir", cfg.output_dir.string()},
      {"tasks", cfg.tasks},
      {"init_scale", cfg.init_scale},
      {"jobs", cfg.jobs},
      {"plot", cfg.plot},
  };
  if (cfg.seed)
    doc["seed"] = *cfg.seed;
  return doc;
}

} // namespace kvqe::cli
