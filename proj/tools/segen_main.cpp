// segen command-line front end. Talks to the pipeline exclusively through
// the C API in segen.h.
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "segen.h"

static void usage(FILE* out) {
    fprintf(out,
            "usage: segen <sample|train|eval|run> [options]\n"
            "\n"
            "options:\n"
            "  --preset NAME     apply a parameter preset (ps1..ps5)\n"
            "  --config FILE     load a 'key = value' configuration file\n"
            "  --KEY VALUE       override any configuration key, e.g.\n"
            "                    --graph edges.txt --k 10 --seed 7\n"
            "  --help            show this message\n"
            "\n"
            "precedence: built-in defaults < preset < config file < flags\n"
            "artifacts are written to the configured output_dir\n");
}

static int fail(segen_status status) {
    fprintf(stderr, "segen: %s\n", segen_last_error());
    return (int)status;
}

int main(int argc, char** argv) {
    if (argc >= 2 && (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0)) {
        usage(stdout);
        return 0;
    }
    if (argc < 2) {
        usage(stderr);
        return SEGEN_ERR_USAGE;
    }
    const char* subcommand = argv[1];

    const char* preset = NULL;
    const char* config_file = NULL;
    for (int i = 2; i < argc; i += 2) {
        if (strncmp(argv[i], "--", 2) != 0 || i + 1 >= argc) {
            fprintf(stderr, "segen: expected --key value pairs after the subcommand\n");
            return SEGEN_ERR_USAGE;
        }
        const char* key = argv[i] + 2;
        if (strcmp(key, "preset") == 0) preset = argv[i + 1];
        else if (strcmp(key, "config") == 0) config_file = argv[i + 1];
    }

    segen_config* cfg = segen_config_new();
    if (!cfg) {
        fprintf(stderr, "segen: out of memory\n");
        return SEGEN_ERR_NUMERIC;
    }

    segen_status status = SEGEN_OK;
    if (preset && (status = segen_config_apply_preset(cfg, preset)) != SEGEN_OK)
        goto done;
    if (config_file && (status = segen_config_load_file(cfg, config_file)) != SEGEN_OK)
        goto done;
    for (int i = 2; i < argc; i += 2) {
        const char* key = argv[i] + 2;
        if (strcmp(key, "preset") == 0 || strcmp(key, "config") == 0) continue;
        if ((status = segen_config_set(cfg, key, argv[i + 1])) != SEGEN_OK) goto done;
    }
    status = segen_run(cfg, subcommand);

done:
    if (status != SEGEN_OK) fail(status);
    segen_config_free(cfg);
    return (int)status;
}
