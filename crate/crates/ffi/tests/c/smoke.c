#include <stdio.h>
#include <string.h>
#include "qcanon.h"

int main(void) {
    QcDatum *d = NULL;
    if (qc_datum_new("B2", &d) != QC_STATUS_OK) return 10;
    size_t rank = 0;
    if (qc_datum_rank(d, &rank) != QC_STATUS_OK || rank != 2) return 11;
    char *doc = NULL;
    if (qc_basis_json(d, "1,2,1,2", 1, &doc) != QC_STATUS_OK) return 12;
    if (strstr(doc, "\"elements\"") == NULL) return 13;
    qc_string_free(doc);
    if (qc_basis_json(d, "1,1", 1, &doc) != QC_STATUS_INVALID_INPUT) return 14;
    qc_datum_free(d);

    int64_t in[4] = {1, 0, 0, 0}, out[4];
    if (qc_phi_b2(in, false, out) != QC_STATUS_OK) return 15;
    printf("%lld %lld %lld %lld\n", (long long)out[0], (long long)out[1], (long long)out[2], (long long)out[3]);

    QcReport *r = NULL;
    if (qc_verify("tropical", NULL, -1, 3, 7, &r) != QC_STATUS_OK) return 16;
    if (qc_report_passed(r) != QC_STATUS_OK) return 17;
    qc_report_free(r);
    return 0;
}
