/* Minimal C consumer: parse a state file, certify a bound, print the report.
 *
 * Build (from the repository root, after `cargo build -p schmidt-locus-capi`):
 *
 *   cc crates/capi/examples/smoke.c \
 *      -Icrates/capi/include -Ltarget/debug -lschmidt_locus_capi \
 *      -Wl,-rpath,target/debug -o smoke
 *
 *   ./smoke data/rank2_5x5.json
 */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "schmidt_locus.h"

static char *read_file(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) {
        return NULL;
    }
    fseek(f, 0, SEEK_END);
    long size = ftell(f);
    fseek(f, 0, SEEK_SET);
    char *buffer = malloc((size_t)size + 1);
    if (buffer && fread(buffer, 1, (size_t)size, f) == (size_t)size) {
        buffer[size] = '\0';
    } else {
        free(buffer);
        buffer = NULL;
    }
    fclose(f);
    return buffer;
}

int main(int argc, char **argv) {
    if (argc != 2) {
        fprintf(stderr, "usage: %s STATE_FILE\n", argv[0]);
        return 2;
    }
    char *json = read_file(argv[1]);
    if (!json) {
        fprintf(stderr, "cannot read %s\n", argv[1]);
        return 2;
    }

    printf("library version %s\n", sl_version());

    SlState *state = NULL;
    SlStatus status = sl_state_parse(json, &state);
    free(json);
    if (status != SL_STATUS_OK) {
        fprintf(stderr, "parse failed (%d): %s\n", (int)status, sl_last_error_message());
        return 1;
    }

    uint64_t m = 0, n = 0, rank = 0;
    sl_state_m(state, &m);
    sl_state_n(state, &n);
    sl_state_rank(state, &rank);
    printf("state: m=%llu n=%llu rank=%llu\n",
           (unsigned long long)m, (unsigned long long)n, (unsigned long long)rank);

    SlProbeConfig config;
    sl_probe_config_default(&config);
    config.seed = 42;

    SlReport *report = NULL;
    status = sl_analyze(state, &config, &report);
    if (status != SL_STATUS_OK) {
        fprintf(stderr, "analysis failed (%d): %s\n", (int)status, sl_last_error_message());
        sl_state_free(state);
        return 1;
    }

    uint64_t certified = 0, exact = 0, generic = 0;
    sl_report_certified_bound(report, &certified);
    sl_report_exact_bound(report, &exact);
    sl_report_generic_bound(report, &generic);
    printf("certified bound %llu (exact route %llu, generic prediction %llu)\n",
           (unsigned long long)certified, (unsigned long long)exact,
           (unsigned long long)generic);

    char *report_json = NULL;
    if (sl_report_to_json(report, &report_json) == SL_STATUS_OK) {
        printf("%s\n", report_json);
        sl_string_free(report_json);
    }

    sl_report_free(report);
    sl_state_free(state);
    return 0;
}
