#include "segen.h"

#include <cstring>
#include <functional>
#include <stdexcept>
#include <string>

#include "segen/config.hpp"
#include "segen/errors.hpp"
#include "segen/pipeline.hpp"

struct segen_config {
    segen::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

segen_status guard(const std::function<void()>& fn) {
    try {
        fn();
        g_last_error.clear();
        return SEGEN_OK;
    } catch (const segen::ConfigError& e) {
        g_last_error = e.what();
        return SEGEN_ERR_USAGE;
    } catch (const segen::DataError& e) {
        g_last_error = e.what();
        return SEGEN_ERR_DATA;
    } catch (const segen::NumericError& e) {
        g_last_error = e.what();
        return SEGEN_ERR_NUMERIC;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return SEGEN_ERR_USAGE;
    } catch (const std::out_of_range& e) {
        g_last_error = e.what();
        return SEGEN_ERR_USAGE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SEGEN_ERR_NUMERIC;
    }
}

}  // namespace

extern "C" {

segen_config* segen_config_new(void) {
    return new (std::nothrow) segen_config{};
}

void segen_config_free(segen_config* cfg) {
    delete cfg;
}

segen_status segen_config_apply_preset(segen_config* cfg, const char* name) {
    if (!cfg || !name) return SEGEN_ERR_USAGE;
    return guard([&] { cfg->cfg.apply_preset(name); });
}

segen_status segen_config_load_file(segen_config* cfg, const char* path) {
    if (!cfg || !path) return SEGEN_ERR_USAGE;
    return guard([&] { cfg->cfg.load_file(path); });
}

segen_status segen_config_set(segen_config* cfg, const char* key,
                              const char* value) {
    if (!cfg || !key || !value) return SEGEN_ERR_USAGE;
    return guard([&] { cfg->cfg.set(key, value); });
}

segen_status segen_config_snapshot(const segen_config* cfg, char* buf,
                                   size_t buf_size) {
    if (!cfg || !buf || buf_size == 0) return SEGEN_ERR_USAGE;
    std::string snap = cfg->cfg.snapshot();
    std::size_t n = std::min(snap.size(), buf_size - 1);
    std::memcpy(buf, snap.data(), n);
    buf[n] = '\0';
    return SEGEN_OK;
}

segen_status segen_run(const segen_config* cfg, const char* subcommand) {
    if (!cfg || !subcommand) return SEGEN_ERR_USAGE;
    return guard([&] {
        segen::Stage stage = segen::stage_from_name(subcommand);
        segen::run_experiment(cfg->cfg, stage);
    });
}

const char* segen_last_error(void) {
    return g_last_error.c_str();
}

}  // extern "C"
