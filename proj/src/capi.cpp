#include "interp/interp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "interp/error.hpp"
#include "interp/intsets.hpp"
#include "interp/io.hpp"
#include "interp/reports.hpp"

struct interp_set {
  interp::IntegerSetModel model;
};

struct interp_construction {
  interp::ConstructionOutput output;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_details = "null";

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void clear_error() {
  g_last_error.clear();
  g_last_details = "null";
}

template <typename F>
interp_status guarded(F&& body) {
  clear_error();
  try {
    body();
    return INTERP_OK;
  } catch (const interp::Error& e) {
    g_last_error = e.what();
    g_last_details = e.details().is_null() ? "null" : e.details().dump();
    return static_cast<interp_status>(static_cast<int>(e.code()));
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return INTERP_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return INTERP_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return INTERP_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return INTERP_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) interp::fail(interp::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

nlohmann::json parse_json(const char* text, const char* what) {
  if (!text || !*text) return nlohmann::json::object();
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) interp::fail(interp::ErrorCode::InvalidArgument, std::string(what) + " is not valid JSON");
  return j;
}

void emit(const nlohmann::json& report, char** out, int* passed) {
  *out = dup_string(report.dump(2) + "\n");
  if (passed) *passed = interp::report_passed(report) ? 1 : 0;
}

}  // namespace

extern "C" {

const char* interp_version(void) { return "1.0.0"; }

const char* interp_status_name(interp_status status) {
  if (status == INTERP_OK) return "ok";
  const int code = static_cast<int>(status);
  if (code < 1 || code > 8) return "unknown";
  return interp::to_string(static_cast<interp::ErrorCode>(code));
}

const char* interp_last_error(void) { return g_last_error.c_str(); }
const char* interp_last_error_details(void) { return g_last_details.c_str(); }
void interp_string_free(char* text) { std::free(text); }

interp_status interp_set_parse(const char* spec, interp_set** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = nullptr;
    *out = new interp_set{interp::IntegerSetModel::parse(spec)};
  });
}

void interp_set_free(interp_set* set) { delete set; }

interp_status interp_set_contains(const interp_set* set, int64_t n, int* out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = set->model.contains(n) ? 1 : 0;
  });
}

interp_status interp_set_describe(const interp_set* set, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = dup_string(set->model.describe());
  });
}

interp_status interp_set_elements_text(const interp_set* set, int64_t bound, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = dup_string(interp::format_set_file(set->model.elements(bound)));
  });
}

interp_status interp_analyze(const interp_set* set, const char* request_json, char** report_json, int* passed) {
  return guarded([&] {
    require(set, "set");
    require(report_json, "report_json");
    emit(interp::analyze_report(set->model, parse_json(request_json, "request")), report_json, passed);
  });
}

interp_status interp_count(const char* request_json, char** report_json, int* passed) {
  return guarded([&] {
    require(report_json, "report_json");
    emit(interp::count_report(parse_json(request_json, "request")), report_json, passed);
  });
}

interp_status interp_verify_f(const char* request_json, char** report_json, int* passed) {
  return guarded([&] {
    require(report_json, "report_json");
    emit(interp::verify_f_report(parse_json(request_json, "request")), report_json, passed);
  });
}

interp_status interp_word_stats(const char* word_text, const char* request_json, char** report_json) {
  return guarded([&] {
    require(word_text, "word_text");
    require(report_json, "report_json");
    auto w = interp::parse_word_file(word_text);
    emit(interp::word_stats_report(w, parse_json(request_json, "request")), report_json, nullptr);
  });
}

interp_status interp_construct(const char* problem_json, const char* options_json, interp_construction** out) {
  return guarded([&] {
    require(problem_json, "problem_json");
    require(out, "out");
    *out = nullptr;
    auto problem = parse_json(problem_json, "problem");
    auto options = parse_json(options_json, "options");
    *out = new interp_construction{interp::construct_report(problem, options)};
  });
}

void interp_construction_free(interp_construction* c) { delete c; }

int interp_construction_passed(const interp_construction* c) { return c && c->output.passed ? 1 : 0; }

interp_status interp_construction_report(const interp_construction* c, char** out) {
  return guarded([&] {
    require(c, "construction");
    require(out, "out");
    *out = dup_string(c->output.report.dump(2) + "\n");
  });
}

interp_status interp_construction_trace(const interp_construction* c, char** out) {
  return guarded([&] {
    require(c, "construction");
    require(out, "out");
    *out = dup_string(c->output.trace.dump(2) + "\n");
  });
}

size_t interp_construction_word_count(const interp_construction* c) { return c ? c->output.words.size() : 0; }

interp_status interp_construction_word(const interp_construction* c, size_t index, char** name, char** text) {
  return guarded([&] {
    require(c, "construction");
    require(name, "name");
    require(text, "text");
    if (index >= c->output.words.size()) interp::fail(interp::ErrorCode::OutOfRange, "word index out of range");
    const auto& [n, w] = c->output.words[index];
    *name = dup_string(n);
    *text = dup_string(interp::format_word_file(w));
  });
}

}  // extern "C"
