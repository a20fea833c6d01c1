#include <stdio.h>
#include "reciplab.h"

int smoke(void) {
    RlScalar *u = NULL;
    RlScalar *h = NULL;
    char *text = NULL;
    if (rl_scalar_parse("2", &u) != RL_STATUS_OK) {
        fprintf(stderr, "%s\n", rl_last_error());
        return 1;
    }
    if (rl_fe_number(2, u, &h) == RL_STATUS_OK && rl_scalar_to_string(h, &text) == RL_STATUS_OK) {
        printf("H_2(2) = %s\n", text);
        rl_string_free(text);
    }
    rl_scalar_free(h);
    rl_scalar_free(u);

    RlGrid *grid = NULL;
    RlSweep *sweep = NULL;
    RlSweepCounts counts;
    rl_grid_parse("th11", "n = [0, 1]\nh = [1]\nk = [2]\nu = [\"2\"]\n", &grid);
    rl_sweep_run(grid, 1, &sweep);
    rl_sweep_counts(sweep, &counts);
    rl_sweep_free(sweep);
    rl_grid_free(grid);
    return counts.fail != 0;
}
