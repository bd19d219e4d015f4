#include <stdio.h>
#include <string.h>
#include "tonnetz.h"

int main(void) {
    TonnetzGraph *graph = NULL;
    if (tonnetz_graph_build(TONNETZ_NETWORK_EULERIAN, &graph) != TONNETZ_STATUS_OK) {
        return 1;
    }
    if (tonnetz_graph_vertex_count(graph) != 24) return 2;
    if (tonnetz_graph_edge_count(graph) != 36) return 3;
    if (tonnetz_graph_girth(graph) != 6) return 4;
    char *json = NULL;
    if (tonnetz_analyze_progression_json("G#m EM", &json) != TONNETZ_STATUS_OK) return 5;
    if (strstr(json, "3p-hexacycle") == NULL) return 6;
    tonnetz_string_free(json);
    tonnetz_graph_free(graph);
    char *svg = NULL;
    if (tonnetz_tessellation(TONNETZ_NETWORK_ARCHIMEDEAN_MAJOR, 1, true, &svg) != TONNETZ_STATUS_OK) return 7;
    tonnetz_string_free(svg);
    puts("capi smoke ok");
    return 0;
}
