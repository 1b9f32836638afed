#include <stdio.h>
#include <string.h>
#include <assert.h>
#include "negbeta.h"

int main(void) {
    NbParams *p = NULL;
    assert(nb_params_new(1.5, -0.2, &p) == NB_STATUS_OK);

    NbParamsInfo info;
    assert(nb_params_info(p, &info) == NB_STATUS_OK);
    printf("domain [%.17g, %.17g] switch [%.17g, %.17g]\n",
           info.m_minus, info.m_plus, info.s_lo, info.s_hi);

    uint8_t digits[7];
    assert(nb_digits_r(p, 0.5, digits, 7) == NB_STATUS_OK);
    char word[8] = {0};
    for (int i = 0; i < 7; i++) word[i] = '0' + digits[i];
    printf("digits(0.5) = %s\n", word);
    assert(strcmp(word, "0100011") == 0);

    double value, bound;
    assert(nb_evaluate(1.5, digits, 7, &value, &bound) == NB_STATUS_OK);
    assert(value > 0.5 - bound - 1e-9 && value < 0.5 + bound + 1e-9);

    NbUniqueness kind;
    uintptr_t detail;
    assert(nb_classify_uniqueness(1.5, info.m_minus, 1000, &kind, &detail) == NB_STATUS_OK);
    assert(kind == NB_UNIQUENESS_UNIQUE && detail == 2);

    char *json = NULL;
    assert(nb_support_json(1.5, -0.2, &json) == NB_STATUS_OK);
    printf("support = %s\n", json);
    nb_string_free(json);

    assert(nb_params_new(2.5, 0.0, &p) == NB_STATUS_BETA_OUT_OF_RANGE);
    nb_params_free(p);
    puts("ffi smoke test passed");
    return 0;
}
