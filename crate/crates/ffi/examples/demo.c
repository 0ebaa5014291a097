#include <stdio.h>
#include <string.h>

#include "weakfree.h"

static int check(WfStatus st, const char *what) {
    if (st != WF_STATUS_OK) {
        fprintf(stderr, "%s: status %d: %s\n", what, (int)st, wf_last_error());
        return 1;
    }
    return 0;
}

int main(void) {
    WfSession *s = NULL;
    if (check(wf_session_new("x,y", 0, 0, &s), "session")) return 1;

    char *nf = NULL;
    if (check(wf_normalize(s, "x x' x", &nf), "normalize")) return 1;
    printf("normalize: %s\n", nf);
    int bad = strcmp(nf, "1 1 B(x) x 1") != 0;
    wf_string_free(nf);

    bool eq = false;
    if (check(wf_equivalent(s, "x x'", "B(x)", &eq), "equivalent")) return 1;
    printf("equivalent: %s\n", eq ? "true" : "false");
    bad |= !eq;

    char *junk = NULL;
    WfStatus st = wf_normalize(s, "x ?", &junk);
    printf("syntax error: %d %s\n", (int)st, wf_last_error());
    bad |= st != WF_STATUS_SYNTAX;

    WfTable *t = NULL;
    if (check(wf_table_transformations(3, &t), "table")) return 1;
    char *report = NULL;
    if (check(wf_skeleton_report(s, t, "x=5,y=1", WF_STRATEGY_FIRST, 0, 2, &report), "skeleton")) return 1;
    bad |= strstr(report, "FAIL") != NULL;
    wf_string_free(report);

    wf_table_free(t);
    wf_session_free(s);
    return bad;
}
