#include "singser.h"

#include <string>
#include <vector>

#include <json.hpp>

#include "singser/apsums.hpp"
#include "singser/errors.hpp"
#include "singser/harness.hpp"
#include "singser/singular.hpp"
#include "singser/version.hpp"

struct singser_report {
  int pass = 0;
  int warn = 0;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

// Runs fn under the exception-to-status mapping shared by every entry
// point; fn only executes after its caller validated pointers.
template <typename Fn>
singser_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SINGSER_OK;
  } catch (const singser::DomainError& e) {
    g_last_error = e.what();
    return SINGSER_EDOMAIN;
  } catch (const singser::CapacityError& e) {
    g_last_error = e.what();
    return SINGSER_ECAPACITY;
  } catch (const singser::ToleranceError& e) {
    g_last_error = e.what();
    return SINGSER_ETOL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SINGSER_EINVAL;
  }
}

singser_status invalid(const char* msg) {
  g_last_error = msg;
  return SINGSER_EINVAL;
}

// Parse-level problems (shape, typing, unknown keys) raise runtime_error,
// which guarded() maps to SINGSER_EINVAL; value-level problems surface as
// DomainError from ExperimentConfig::validate.
std::vector<std::int64_t> int_list(const nlohmann::json& v, const char* key) {
  if (!v.is_array()) throw std::runtime_error(std::string(key) + " must be an array");
  std::vector<std::int64_t> out;
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw std::runtime_error(std::string(key) + " entries must be integers");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

singser::ExperimentConfig parse_config(const char* config_json) {
  auto j = nlohmann::json::parse(config_json, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("config is not valid JSON");
  if (!j.is_object()) throw std::runtime_error("config must be a JSON object");

  singser::ExperimentConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "suite" && val.is_string())
      cfg.suite = val.get<std::string>();
    else if (key == "h" && val.is_string()) {
      auto s = val.get<std::string>();
      auto dots = s.find("..");
      std::size_t used1 = 0, used2 = 0;
      if (dots == std::string::npos)
        throw std::runtime_error("h string must look like \"a..b\"");
      try {
        cfg.h_min = std::stoll(s.substr(0, dots), &used1);
        cfg.h_max = std::stoll(s.substr(dots + 2), &used2);
      } catch (...) {
        throw std::runtime_error("h window bounds must be integers");
      }
      if (used1 != dots || used2 != s.size() - dots - 2)
        throw std::runtime_error("h window bounds must be integers");
    } else if (key == "h")
      cfg.h_grid = int_list(val, "h");
    else if (key == "r" && val.is_number_integer())
      cfg.r = val.get<std::int64_t>();
    else if (key == "q" && val.is_number_integer())
      cfg.q = val.get<std::int64_t>();
    else if (key == "k" && val.is_number_integer())
      cfg.k = val.get<int>();
    else if (key == "classes")
      cfg.classes = int_list(val, "classes");
    else if (key == "prime_limit" && val.is_number_unsigned())
      cfg.prime_limit = val.get<std::uint64_t>();
    else if (key == "threads" && val.is_number_integer())
      cfg.threads = val.get<int>();
    else
      throw std::runtime_error("unrecognized or mistyped config key: " + key);
  }
  if (cfg.suite.empty()) throw std::runtime_error("config requires a suite name");
  return cfg;
}

}  // namespace

extern "C" {

const char* singser_version(void) { return singser::version_string; }

const char* singser_last_error(void) { return g_last_error.c_str(); }

size_t singser_suite_count(void) { return singser::suite_names().size(); }

const char* singser_suite_name(size_t i) {
  const auto& names = singser::suite_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

singser_status singser_singular_series(const int64_t* offsets, size_t k,
                                       int64_t r, uint64_t prime_limit,
                                       double* value, double* tail) {
  if (offsets == nullptr || value == nullptr) return invalid("null pointer");
  return guarded([&] {
    singser::TupleSet H(std::vector<std::int64_t>(offsets, offsets + k));
    auto sv = singser::singular_series(H, r, prime_limit);
    *value = sv.value;
    if (tail != nullptr) *tail = sv.tail_bound;
  });
}

singser_status singser_singular_series_zero(const int64_t* offsets, size_t k,
                                            int64_t r, uint64_t prime_limit,
                                            double* value, double* tail) {
  if (offsets == nullptr || value == nullptr) return invalid("null pointer");
  return guarded([&] {
    singser::TupleSet H(std::vector<std::int64_t>(offsets, offsets + k));
    auto sv = singser::singular_series_zero(H, r, prime_limit);
    *value = sv.value;
    if (tail != nullptr) *tail = sv.tail_bound;
  });
}

singser_status singser_two_term(int64_t m, int64_t r, uint64_t prime_limit,
                                double* value, double* tail) {
  if (value == nullptr) return invalid("null pointer");
  return guarded([&] {
    auto sv = singser::two_term_exact(m, r, prime_limit);
    *value = sv.value;
    if (tail != nullptr) *tail = sv.tail_bound;
  });
}

singser_status singser_c0(int64_t r, double* value) {
  if (value == nullptr) return invalid("null pointer");
  return guarded([&] { *value = singser::C0(r); });
}

singser_status singser_pair_main_term(int64_t h, int64_t r, double* value) {
  if (value == nullptr) return invalid("null pointer");
  return guarded([&] { *value = singser::pair_main_term(h, r); });
}

singser_status singser_gallagher_ratio(int64_t h, int k, uint64_t prime_limit,
                                       double* value) {
  if (value == nullptr) return invalid("null pointer");
  return guarded([&] { *value = singser::gallagher_ratio(h, k, prime_limit); });
}

singser_status singser_v2_closed(int64_t h, int64_t r, int64_t c1, int64_t c2,
                                 double terms[6]) {
  if (terms == nullptr) return invalid("null pointer");
  return guarded([&] {
    auto t = singser::V2_closed(h, r, c1, c2);
    terms[0] = t.quadratic_term;
    terms[1] = t.mertens_term;
    terms[2] = t.log_term;
    terms[3] = t.constant_term;
    terms[4] = t.character_term.real();
    terms[5] = t.total;
  });
}

singser_status singser_run_suite(const char* config_json, singser_report** out) {
  if (config_json == nullptr || out == nullptr) return invalid("null pointer");
  return guarded([&] {
    auto cfg = parse_config(config_json);
    auto rep = singser::run_suite(cfg);
    auto* handle = new singser_report;
    handle->pass = rep.pass ? 1 : 0;
    handle->warn = rep.warn ? 1 : 0;
    handle->json = rep.to_json();
    handle->csv = rep.to_csv();
    *out = handle;
  });
}

int singser_report_pass(const singser_report* rep) {
  return rep != nullptr ? rep->pass : 0;
}

int singser_report_warn(const singser_report* rep) {
  return rep != nullptr ? rep->warn : 0;
}

const char* singser_report_json(const singser_report* rep) {
  return rep != nullptr ? rep->json.c_str() : "";
}

const char* singser_report_csv(const singser_report* rep) {
  return rep != nullptr ? rep->csv.c_str() : "";
}

void singser_report_free(singser_report* rep) { delete rep; }

}  // extern "C"
