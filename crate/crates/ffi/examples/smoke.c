/* Build: cargo build -p concordance-lab-ffi
 *        cc -Iinclude examples/smoke.c ../../target/debug/libconcordance_lab_ffi.a -lpthread -ldl -lm -o smoke */
#include <stdio.h>
#include "concordance_lab.h"

int main(void) {
    const int64_t pd[] = {4, 2, 5, 1, 8, 6, 1, 5, 6, 3, 7, 4, 2, 7, 3, 8};
    ClKnot *k = NULL;
    if (cl_knot_from_pd("figure_eight", pd, 4, &k) != CL_STATUS_OK) {
        fprintf(stderr, "%s\n", cl_last_error());
        return 1;
    }
    int64_t sig = 0;
    uint8_t arf = 0;
    char *alex = NULL;
    cl_knot_signature(k, &sig, NULL);
    cl_knot_arf(k, &arf);
    cl_knot_alexander(k, &alex);
    printf("signature %lld, arf %u, alexander %s\n", (long long)sig, arf, alex);
    cl_string_free(alex);

    ClKnowledgeBase *kb = NULL;
    ClVerdict v = CL_VERDICT_UNKNOWN;
    cl_kb_new(8, false, &kb);
    cl_kb_register_knot(kb, k);
    cl_kb_verdict(kb, "figure_eight", "C+_1", &v);
    printf("C+_1 verdict %d\n", (int)v);

    int64_t lt = 0;
    if (cl_knot_levine_tristram(k, 1, 2, &lt) == CL_STATUS_OK)
        printf("sigma at 1/2: %lld\n", (long long)lt);

    cl_kb_free(kb);
    cl_knot_free(k);
    return 0;
}
