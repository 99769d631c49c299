#include <stdlib.h>

#include "grainstone/grainstone.h"

int grainstone_c_smoke(void) {
  gs_graph* g = NULL;
  uint64_t* dist;
  int rc = 0;
  if (gs_graph_generate_rmat(6, 4, 0.57, 0.19, 0.19, 0.05, 1, &g) != GS_OK) return 1;
  dist = malloc(sizeof *dist * gs_graph_num_nodes(g));
  if (gs_bfs(g, 0, GS_BFS_PUSH_BSP_SPARSE, 1, dist, NULL) != GS_OK || dist[0] != 0) rc = 2;
  free(dist);
  gs_graph_free(g);
  return rc;
}
