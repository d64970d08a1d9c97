#include <stdio.h>
#include <string.h>

#include "cclosed.h"

#define CHECK(cond)                                            \
    do {                                                       \
        if (!(cond)) {                                         \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, \
                    #cond);                                    \
            return 1;                                          \
        }                                                      \
    } while (0)

int main(void) {
    /* C5 */
    const uint32_t edges[] = {0, 1, 1, 2, 2, 3, 3, 4, 4, 0};
    CcGraph *g = NULL;
    CHECK(cc_graph_from_edges(5, edges, 5, &g) == CC_STATUS_OK);
    CHECK(cc_graph_vertex_count(g) == 5);
    CHECK(cc_graph_edge_count(g) == 5);

    uint32_t c = 0;
    CHECK(cc_c_closure(g, &c) == CC_STATUS_OK && c == 2);

    uint32_t order[5];
    uint32_t wc = 0;
    CHECK(cc_weak_closure(g, &wc, order, 5) == CC_STATUS_OK && wc == 2);
    CHECK(cc_weak_closure(g, &wc, order, 2) == CC_STATUS_BUFFER_TOO_SMALL);
    CHECK(strstr(cc_last_error_message(), "ordering buffer") != NULL);

    uint64_t count = 0;
    CHECK(cc_count_maximal_cliques(g, CC_ALGORITHM_C_CLOSED, &count) == CC_STATUS_OK);
    CHECK(count == 5);

    CcCliqueSet *set = NULL;
    CHECK(cc_cliques_exact(g, &set) == CC_STATUS_OK);
    CHECK(cc_clique_set_len(set) == 5);
    const uint32_t *members = NULL;
    size_t len = 0;
    CHECK(cc_clique_set_get(set, 0, &members, &len) == CC_STATUS_OK && len == 2);
    CHECK(members[0] == 0 && members[1] == 1);
    cc_clique_set_free(set);

    CcBounds b;
    CHECK(cc_bounds(g, false, &b) == CC_STATUS_OK);
    CHECK(b.count_available && b.observed_maximal_cliques == 5 && b.violations == 0);

    CcGraph *bad = NULL;
    CHECK(cc_graph_from_edge_list("1 2 3\n", &bad) == CC_STATUS_PARSE);
    CHECK(bad == NULL);

    cc_graph_free(g);
    puts("ok");
    return 0;
}
