#include "cremona/cremona.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cremona/commands.hpp"
#include "cremona/error.hpp"

struct crm_context {
  std::string last_error;
};

struct crm_map {
  cremona::ProjMap value;
};

struct crm_model {
  cremona::SurfaceModel value;
};

struct crm_group {
  cremona::MapGroup value;
};

namespace {

crm_status status_of(cremona::ErrorKind kind) { return static_cast<crm_status>(static_cast<int>(kind) + 1); }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
crm_status guarded(crm_context* ctx, F&& body) {
  if (ctx != nullptr) ctx->last_error.clear();
  try {
    body();
    return CRM_OK;
  } catch (const cremona::Error& e) {
    if (ctx != nullptr) ctx->last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    if (ctx != nullptr) ctx->last_error = "out of memory";
    return CRM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    if (ctx != nullptr) ctx->last_error = e.what();
    return CRM_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) cremona::fail(cremona::ErrorKind::Usage, what);
}

cremona::Json optional_json(const char* text) {
  if (text == nullptr || *text == '\0') return nullptr;
  return cremona::parse_json(text);
}

crm_status run(crm_context* ctx, const char* command, const char* input_json, const char* options_json,
               char** output, int* exit_code, bool text) {
  return guarded(ctx, [&] {
    require(command != nullptr && output != nullptr && exit_code != nullptr, "null argument");
    *output = nullptr;
    cremona::Json input;
    cremona::Json options;
    cremona::CommandResult res;
    try {
      input = optional_json(input_json);
      options = optional_json(options_json);
      res = cremona::run_command(command, input, options);
    } catch (const cremona::Error& e) {
      res.output = cremona::Json{{"error", std::string(cremona::to_string(e.kind()))}, {"message", e.what()}};
      res.text = "error (" + std::string(cremona::to_string(e.kind())) + "): " + e.what() + "\n";
      res.exit_code = cremona::exit_code_for(e.kind());
    }
    *exit_code = res.exit_code;
    *output = copy_string(text ? res.text : res.output.dump(2) + "\n");
    if (*output == nullptr) throw std::bad_alloc();
  });
}

}  // namespace

extern "C" {

const char* crm_version(void) { return "1.0.0"; }

const char* crm_status_name(crm_status status) {
  if (status == CRM_OK) return "ok";
  if (status == CRM_ERR_INTERNAL) return "internal";
  if (status < CRM_OK || status > CRM_ERR_INTERNAL) return "unknown";
  return cremona::to_string(static_cast<cremona::ErrorKind>(static_cast<int>(status) - 1)).data();
}

crm_context* crm_context_new(void) { return new (std::nothrow) crm_context(); }

void crm_context_free(crm_context* ctx) { delete ctx; }

const char* crm_last_error(const crm_context* ctx) { return ctx == nullptr ? "" : ctx->last_error.c_str(); }

crm_status crm_set_conductor_cap(crm_context* ctx, int cap) {
  return guarded(ctx, [&] {
    require(cap >= 1, "conductor cap must be positive");
    cremona::set_conductor_cap(cap);
  });
}

int crm_conductor_cap(void) { return cremona::conductor_cap(); }

void crm_string_free(char* s) { std::free(s); }

crm_status crm_run_command(crm_context* ctx, const char* command, const char* input_json, const char* options_json,
                           char** output, int* exit_code) {
  return run(ctx, command, input_json, options_json, output, exit_code, false);
}

crm_status crm_run_command_text(crm_context* ctx, const char* command, const char* input_json,
                                const char* options_json, char** output, int* exit_code) {
  return run(ctx, command, input_json, options_json, output, exit_code, true);
}

crm_status crm_map_parse(crm_context* ctx, const char* x, const char* y, const char* z, crm_map** out) {
  return guarded(ctx, [&] {
    require(x != nullptr && y != nullptr && z != nullptr && out != nullptr, "null argument");
    *out = new crm_map{cremona::ProjMap::parse({x, y, z})};
  });
}

crm_status crm_map_compose(crm_context* ctx, const crm_map* f, const crm_map* g, crm_map** out) {
  return guarded(ctx, [&] {
    require(f != nullptr && g != nullptr && out != nullptr, "null argument");
    *out = new crm_map{cremona::compose(f->value, g->value)};
  });
}

int crm_map_degree(const crm_map* f) { return f == nullptr ? -1 : f->value.degree(); }

int crm_map_equal(const crm_map* f, const crm_map* g) {
  return f != nullptr && g != nullptr && cremona::projective_eq(f->value, g->value) ? 1 : 0;
}

crm_status crm_map_to_string(crm_context* ctx, const crm_map* f, char** out) {
  return guarded(ctx, [&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = copy_string(f->value.to_string());
    if (*out == nullptr) throw std::bad_alloc();
  });
}

void crm_map_free(crm_map* f) { delete f; }

crm_status crm_model_from_json(crm_context* ctx, const char* json, crm_model** out) {
  return guarded(ctx, [&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new crm_model{cremona::model_from_json(cremona::parse_json(json))};
  });
}

int crm_model_rank(const crm_model* m) { return m == nullptr ? -1 : m->value.rank(); }

crm_status crm_model_curve_count(crm_context* ctx, const crm_model* m, size_t* count) {
  return guarded(ctx, [&] {
    require(m != nullptr && count != nullptr, "null argument");
    *count = m->value.negative_curves().size();
  });
}

crm_status crm_model_curves_json(crm_context* ctx, const crm_model* m, char** out) {
  return guarded(ctx, [&] {
    require(m != nullptr && out != nullptr, "null argument");
    cremona::Json list = cremona::Json::array();
    for (const auto& c : m->value.negative_curves()) list.push_back(c.label());
    *out = copy_string(list.dump());
    if (*out == nullptr) throw std::bad_alloc();
  });
}

void crm_model_free(crm_model* m) { delete m; }

crm_status crm_map_group_closure(crm_context* ctx, const crm_map* const* generators, size_t count, size_t cap,
                                 crm_group** out) {
  return guarded(ctx, [&] {
    require(out != nullptr && (generators != nullptr || count == 0), "null argument");
    std::vector<cremona::ProjMap> gens;
    for (size_t i = 0; i < count; ++i) {
      require(generators[i] != nullptr, "null generator");
      gens.push_back(generators[i]->value);
    }
    *out = new crm_group{cremona::closure(gens, cap)};
  });
}

size_t crm_group_order(const crm_group* g) { return g == nullptr ? 0 : g->value.order(); }

int crm_group_is_abelian(const crm_group* g) { return g != nullptr && g->value.is_abelian() ? 1 : 0; }

crm_status crm_group_element(crm_context* ctx, const crm_group* g, size_t index, crm_map** out) {
  return guarded(ctx, [&] {
    require(g != nullptr && out != nullptr, "null argument");
    require(index < g->value.order(), "element index out of range");
    *out = new crm_map{g->value.elements[index]};
  });
}

void crm_group_free(crm_group* g) { delete g; }

}  // extern "C"
