#include "plsurf/plsurf.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "plsurf/errors.hpp"
#include "plsurf/io.hpp"
#include "plsurf/selftest.hpp"

struct plsurf_instance {
  plsurf::Instance inst;
};

namespace {

thread_local std::string last_error;

int status_of(plsurf::ErrorCode code) {
  using plsurf::ErrorCode;
  int c = static_cast<int>(code);
  switch (plsurf::category(code)) {
    case plsurf::ErrorCategory::Input:
      return PLSURF_E_INVALID_INPUT + c - static_cast<int>(ErrorCode::InvalidInput);
    case plsurf::ErrorCategory::Precondition:
      return PLSURF_E_PRECONDITION + c - static_cast<int>(ErrorCode::PreconditionFailed);
    case plsurf::ErrorCategory::Invariant:
      return PLSURF_E_INVARIANT + c - static_cast<int>(ErrorCode::InvariantViolation);
  }
  return PLSURF_E_INTERNAL;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return PLSURF_OK;
  } catch (const plsurf::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return PLSURF_E_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return PLSURF_E_INTERNAL;
  }
}

int null_argument() {
  last_error = "null argument";
  return PLSURF_E_NULL_ARGUMENT;
}

void emit(const plsurf::Report& r, int format, char** out) {
  *out = dup(format == PLSURF_JSON ? r.data.dump(2) + "\n" : r.text);
}

plsurf::GenerateParams parse_params(const std::string& spec) {
  plsurf::GenerateParams gp;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) plsurf::fail(plsurf::ErrorCode::UnsupportedKind, "unknown kind \"" + spec + "\"");
    std::string key = item.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      plsurf::fail(plsurf::ErrorCode::UnsupportedKind, "bad value in \"" + item + "\"");
    }
    if (value < 0) plsurf::fail(plsurf::ErrorCode::UnsupportedKind, "negative value in \"" + item + "\"");
    if (key == "genus")
      gp.genus = value;
    else if (key == "crosscaps")
      gp.crosscaps = value;
    else if (key == "boundary")
      gp.boundary = value;
    else if (key == "dimples")
      gp.dimples = value;
    else if (key == "arity")
      gp.saddle_arity = value;
    else
      plsurf::fail(plsurf::ErrorCode::UnsupportedKind, "unknown parameter \"" + key + "\"");
  }
  return gp;
}

}  // namespace

extern "C" {

int plsurf_status_category(int status) {
  if (status == PLSURF_OK) return 0;
  if (status >= PLSURF_E_INVALID_INPUT && status < PLSURF_E_PRECONDITION) return 1;
  if (status >= PLSURF_E_PRECONDITION && status < PLSURF_E_INVARIANT) return 2;
  return 3;
}

const char* plsurf_status_name(int status) {
  if (status == PLSURF_OK) return "Ok";
  if (status == PLSURF_E_INTERNAL) return "Internal";
  if (status == PLSURF_E_NULL_ARGUMENT) return "NullArgument";
  for (int c = 0; c <= static_cast<int>(plsurf::ErrorCode::BandContainsOtherCritical); ++c) {
    auto code = static_cast<plsurf::ErrorCode>(c);
    if (status_of(code) == status) return plsurf::to_string(code).data();
  }
  return "Unknown";
}

const char* plsurf_last_error(void) { return last_error.c_str(); }

void plsurf_string_free(char* s) { std::free(s); }

int plsurf_instance_parse(const char* text, plsurf_instance** out) {
  if (!text || !out) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new plsurf_instance{plsurf::parse_instance(text)}; });
}

int plsurf_instance_generate(const char* kind, uint32_t seed, plsurf_instance** out) {
  if (!kind || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    std::string k(kind);
    plsurf::Instance inst;
    if (k.find('=') != std::string::npos) {
      auto gp = parse_params(k);
      gp.options.seed = seed;
      inst = plsurf::generate(gp);
    } else {
      inst = plsurf::generate_named(k, seed);
    }
    plsurf::validate_axioms(inst.surface, inst.function);
    *out = new plsurf_instance{std::move(inst)};
  });
}

int plsurf_instance_serialize(const plsurf_instance* inst, char** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] { *out = dup(plsurf::serialize_instance(inst->inst)); });
}

void plsurf_instance_free(plsurf_instance* inst) { delete inst; }

int plsurf_instance_euler_char(const plsurf_instance* inst, int* out) {
  if (!inst || !out) return null_argument();
  return guarded([&] { *out = plsurf::classify(inst->inst.surface).euler_char; });
}

int plsurf_named_kinds(char** out) {
  if (!out) return null_argument();
  return guarded([&] {
    std::string s;
    for (const auto& k : plsurf::named_kinds()) s += k + "\n";
    *out = dup(s);
  });
}

int plsurf_validate(const plsurf_instance* inst, int format, char** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] { emit(plsurf::validate_report(inst->inst), format, out); });
}

int plsurf_analyze(const plsurf_instance* inst, int format, char** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    emit(plsurf::analyze_report(plsurf::build_atlas(inst->inst.surface, inst->inst.function)), format, out);
  });
}

int plsurf_atoms(const plsurf_instance* inst, int format, char** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    emit(plsurf::atoms_report(plsurf::build_atlas(inst->inst.surface, inst->inst.function)), format, out);
  });
}

int plsurf_decompose(const plsurf_instance* inst, int format, char** out, char** dot) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    auto rep = plsurf::build_Mneg(inst->inst.surface, inst->inst.function);
    emit(plsurf::decomposition_report(rep), format, out);
    if (dot) *dot = dup(plsurf::to_dot(rep));
  });
}

int plsurf_lefschetz(const plsurf_instance* inst, const char* automorphism, int assume_isotopic, int format,
                     char** out) {
  if (!inst || !automorphism || !out) return null_argument();
  return guarded([&] {
    auto in = plsurf::parse_automorphism(automorphism, inst->inst.surface);
    emit(plsurf::lefschetz_report(in, assume_isotopic != 0), format, out);
  });
}

int plsurf_leaf_check(const plsurf_instance* inst, const char* automorphism, int format, char** out) {
  if (!inst || !automorphism || !out) return null_argument();
  return guarded([&] {
    const auto& s = inst->inst.surface;
    auto in = plsurf::parse_automorphism(automorphism, s);
    auto v = plsurf::leaf_invariance_check(s, inst->inst.function, in.map);
    plsurf::Report r;
    r.data["passed"] = v.passed;
    r.data["leaves_checked"] = v.leaves_checked;
    std::ostringstream t;
    t << "leaves checked: " << v.leaves_checked << "\n" << (v.passed ? "every leaf is invariant\n" : "");
    if (v.witness) {
      std::vector<std::string> cells;
      for (const auto& p : v.witness->passages) cells.push_back(plsurf::describe(p, s));
      r.data["reason"] = v.reason;
      r.data["witness"] = {{"component", v.witness->component},
                           {"level", plsurf::format_rational(v.witness->level)},
                           {"closed", v.witness->closed},
                           {"passages", cells}};
      t << v.reason << ": leaf of K" << v.witness->component << " at level "
        << plsurf::format_rational(v.witness->level) << " through";
      for (const auto& c : cells) t << " " << c << ";";
      t << "\n";
    }
    r.text = t.str();
    emit(r, format, out);
  });
}

int plsurf_selftest(plsurf_progress_fn progress, void* user, int format, char** out, int* passed) {
  if (!out) return null_argument();
  return guarded([&] {
    auto line = [](const plsurf::SelftestCheck& c) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2fs", c.seconds);
      return std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + " (" + buf + ")";
    };
    auto checks = plsurf::run_selftest([&](const plsurf::SelftestCheck& c) {
      if (progress) progress(line(c).c_str(), user);
    });
    plsurf::Report r;
    r.data = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& c : checks) {
      all = all && c.passed;
      r.data.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"cases", c.cases},
                        {"violations", c.violations},
                        {"detail", c.detail},
                        {"seconds", c.seconds}});
      r.text += line(c) + "\n";
    }
    if (passed) *passed = all ? 1 : 0;
    emit(r, format, out);
  });
}

}  // extern "C"
