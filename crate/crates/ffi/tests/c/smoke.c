#include <stdio.h>
#include <string.h>

#include "taucat.h"

static int fail(const char *what) {
    const char *msg = taucat_last_error_message();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    const char *source = "vertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3\n";
    TaucatAlgebra *alg = NULL;
    TaucatContext *ctx = NULL;
    char *json = NULL;
    int32_t passed = 0;

    if (taucat_algebra_parse(source, &alg) != TAUCAT_STATUS_OK) return fail("parse");
    if (taucat_context_build(alg, 100, &ctx) != TAUCAT_STATUS_OK) return fail("build");
    if (taucat_inventory_len(ctx) != 6) return fail("inventory");

    if (taucat_enumerate(ctx, "stt", &json) != TAUCAT_STATUS_OK) return fail("enumerate");
    if (strstr(json, "\"count\":14") == NULL) return fail("count");
    taucat_string_free(json);

    if (taucat_verify(ctx, "3.4", &passed, &json) != TAUCAT_STATUS_OK || passed != 1) return fail("verify");
    taucat_string_free(json);

    if (taucat_check(ctx, "Z", &json) != TAUCAT_STATUS_UNKNOWN_MEMBER) return fail("member");
    if (taucat_last_error_message() == NULL) return fail("message");

    taucat_context_free(ctx);
    taucat_algebra_free(alg);
    printf("ok %s\n", taucat_version());
    return 0;
}
