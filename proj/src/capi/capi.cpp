#include "np3/np3.h"

#include <new>
#include <string>

#include "../core/run.hpp"

struct np3_context {
    np3::RunResult last;
};

extern "C" {

np3_context* np3_context_new(void) {
    return new (std::nothrow) np3_context();
}

void np3_context_free(np3_context* ctx) { delete ctx; }

int np3_run(np3_context* ctx, const char* config_json) {
    if (!ctx) return NP3_USAGE;
    if (!config_json) {
        ctx->last = {};
        ctx->last.status = np3::RunStatus::Usage;
        ctx->last.error = "BadConfig: null config";
        return NP3_USAGE;
    }
    ctx->last = np3::run_command(config_json);
    return static_cast<int>(ctx->last.status);
}

const char* np3_output(const np3_context* ctx) {
    return ctx ? ctx->last.output.c_str() : "";
}

const char* np3_csv(const np3_context* ctx) {
    return ctx ? ctx->last.csv.c_str() : "";
}

const char* np3_error(const np3_context* ctx) {
    return ctx ? ctx->last.error.c_str() : "";
}

const char* np3_version(void) { return np3::version_string(); }

}  // extern "C"
