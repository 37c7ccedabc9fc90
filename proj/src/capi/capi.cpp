// Copyright 2026 The megame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "megame/megame.h"

#include "megame/report.hpp"
#include "megame/scenario.hpp"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

struct meg_scenario {
  megame::GameSpec spec;
};

namespace {

thread_local std::string last_error;

meg_status status_of(megame::ErrorKind kind) {
  using megame::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument: return MEG_ERR_INVALID_ARGUMENT;
    case ErrorKind::kParse: return MEG_ERR_PARSE;
    case ErrorKind::kReference: return MEG_ERR_REFERENCE;
    case ErrorKind::kNotNormalized: return MEG_ERR_NOT_NORMALIZED;
    case ErrorKind::kScript: return MEG_ERR_SCRIPT;
    case ErrorKind::kIncoherent: return MEG_ERR_INCOHERENT;
    case ErrorKind::kNullEvent: return MEG_ERR_NULL_EVENT;
    case ErrorKind::kKernelGap: return MEG_ERR_KERNEL_GAP;
    case ErrorKind::kUnknownName: return MEG_ERR_UNKNOWN_NAME;
    case ErrorKind::kIo: return MEG_ERR_IO;
  }
  return MEG_ERR_INTERNAL;
}

meg_status set_error(meg_status status, const std::string& what) {
  last_error = what;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
meg_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return MEG_OK;
  } catch (const megame::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MEG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(MEG_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) megame::fail(megame::ErrorKind::kInvalidArgument, what);
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void clear(char** out) {
  if (out) *out = nullptr;
}

std::optional<std::string> opt(const char* s) {
  if (!s) return std::nullopt;
  return std::string(s);
}

meg_status load(meg_scenario** out, megame::GameSpec (*loader)(const std::string&),
                const char* arg) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = nullptr;
    require(arg != nullptr, "null argument");
    *out = new meg_scenario{loader(arg)};
  });
}

}  // namespace

extern "C" {

const char* meg_last_error(void) { return last_error.c_str(); }

const char* meg_status_name(meg_status status) {
  switch (status) {
    case MEG_OK: return "ok";
    case MEG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MEG_ERR_PARSE: return "parse";
    case MEG_ERR_REFERENCE: return "reference";
    case MEG_ERR_NOT_NORMALIZED: return "not_normalized";
    case MEG_ERR_SCRIPT: return "script";
    case MEG_ERR_INCOHERENT: return "incoherent";
    case MEG_ERR_NULL_EVENT: return "null_event";
    case MEG_ERR_KERNEL_GAP: return "kernel_gap";
    case MEG_ERR_UNKNOWN_NAME: return "unknown_name";
    case MEG_ERR_IO: return "io";
    case MEG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void meg_string_free(char* s) { std::free(s); }

meg_status meg_builtin_names(char** out) {
  return guarded([&] {
    clear(out);
    require(out != nullptr, "null output pointer");
    std::string names;
    for (const auto& n : megame::builtin_names()) names += n + "\n";
    *out = copy_out(names);
  });
}

meg_status meg_scenario_load_file(const char* path, meg_scenario** out) {
  return load(out, &megame::load_scenario_file, path);
}

meg_status meg_scenario_load_json(const char* text, meg_scenario** out) {
  return load(out, &megame::load_scenario, text);
}

meg_status meg_scenario_builtin(const char* name, meg_scenario** out) {
  return load(out, &megame::builtin, name);
}

meg_status meg_scenario_resolve(const char* path_or_name, meg_scenario** out) {
  return load(out, &megame::resolve_scenario, path_or_name);
}

void meg_scenario_free(meg_scenario* s) { delete s; }

meg_status meg_scenario_name(const meg_scenario* s, char** out) {
  return guarded([&] {
    clear(out);
    require(s && out, "null argument");
    *out = copy_out(s->spec.name);
  });
}

meg_status meg_scenario_to_json(const meg_scenario* s, char** out) {
  return guarded([&] {
    clear(out);
    require(s && out, "null argument");
    *out = copy_out(megame::serialize(s->spec));
  });
}

meg_status meg_run(const meg_scenario* s, const char* jury_type, long rounds,
                   meg_format format, char** out) {
  return guarded([&] {
    clear(out);
    require(s && out, "null argument");
    require(format == MEG_FORMAT_CSV || format == MEG_FORMAT_JSONL, "unknown format");
    std::optional<std::size_t> n;
    if (rounds >= 0) n = static_cast<std::size_t>(rounds);
    const auto f = format == MEG_FORMAT_CSV ? megame::report::TrajectoryFormat::kCsv
                                            : megame::report::TrajectoryFormat::kJsonl;
    *out = copy_out(megame::report::run(s->spec, opt(jury_type), n, f));
  });
}

meg_status meg_check(const meg_scenario* s, meg_check_kind kind,
                     const meg_check_options* options, char** out, int* positive) {
  return guarded([&] {
    clear(out);
    require(s && out && positive, "null argument");
    meg_check_options o{nullptr, nullptr, -1, -1};
    if (options) o = *options;
    namespace r = megame::report;
    r::Outcome result;
    switch (kind) {
      case MEG_CHECK_DISINTERESTED:
        result = r::check_disinterested(s->spec, opt(o.jury_type),
                                        o.max_length >= 0 ? o.max_length : 4);
        break;
      case MEG_CHECK_DOGWHISTLE: {
        std::optional<std::size_t> g;
        if (o.grammar >= 0) g = static_cast<std::size_t>(o.grammar);
        result = r::check_dogwhistle(s->spec, opt(o.jury_type), opt(o.ulf), g);
        break;
      }
      case MEG_CHECK_AMBIGUITY:
        result = r::check_ambiguity(s->spec, opt(o.jury_type), opt(o.ulf));
        break;
      case MEG_CHECK_COHERENCE:
        result = r::check_coherence(s->spec, opt(o.ulf));
        break;
      default:
        require(false, "unknown check kind");
    }
    *out = copy_out(result.text);
    *positive = result.positive ? 1 : 0;
  });
}

meg_status meg_enumerate(const meg_scenario* s, const char* ulf, char** out) {
  return guarded([&] {
    clear(out);
    require(s && ulf && out, "null argument");
    *out = copy_out(megame::report::enumerate(s->spec, ulf));
  });
}

meg_status meg_agree(const meg_scenario* s, const char* grid_step, long max_rounds,
                     int not_truth_interested, char** out, int* all_agreed) {
  return guarded([&] {
    clear(out);
    require(s && grid_step && out && all_agreed, "null argument");
    require(max_rounds > 0, "max rounds must be positive");
    require(not_truth_interested <= 1, "player must be 0 or 1");
    std::optional<megame::PlayerId> player;
    if (not_truth_interested >= 0) player = static_cast<megame::PlayerId>(not_truth_interested);
    const auto result = megame::report::agree(s->spec, megame::parse_rational(grid_step),
                                              static_cast<std::size_t>(max_rounds), player);
    *out = copy_out(result.text);
    *all_agreed = result.positive ? 1 : 0;
  });
}

meg_status meg_solve(const meg_scenario* s, const char* jury_type, long depth, char** out) {
  return guarded([&] {
    clear(out);
    require(s && out, "null argument");
    require(depth >= 0, "depth must be nonnegative");
    *out = copy_out(
        megame::report::solve(s->spec, opt(jury_type), static_cast<std::size_t>(depth)));
  });
}

meg_status meg_distance(const meg_scenario* s, const char* const* refs, int count,
                        char** out) {
  return guarded([&] {
    clear(out);
    require(s && out, "null argument");
    require(count >= 0 && (count == 0 || refs), "bad reference list");
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i) {
      require(refs[i] != nullptr, "null reference");
      names.emplace_back(refs[i]);
    }
    *out = copy_out(megame::report::distance(s->spec, names));
  });
}

meg_status meg_dot(const meg_scenario* s, const char* ulf, long completion, char** out) {
  return guarded([&] {
    clear(out);
    require(s && ulf && out, "null argument");
    require(completion >= 0, "completion must be nonnegative");
    *out = copy_out(megame::report::dot(s->spec, ulf, static_cast<std::size_t>(completion)));
  });
}

}  // extern "C"
