#include <stdio.h>
#include <string.h>

#include "vinculum.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,  \
              vn_last_error_message());                               \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  VnPatternSet *ps = NULL;
  uint64_t count = 0;
  CHECK(vn_pattern_set_parse("1-23", &ps) == VN_STATUS_OK);
  CHECK(vn_count_avoiders(ps, 6, 11, &count) == VN_STATUS_OK);
  CHECK(count == 203);

  VnDistribution *d = NULL;
  CHECK(vn_distribution_new(ps, VN_STAT_LAST, 6, 11, &d) == VN_STATUS_OK);
  CHECK(vn_distribution_get(d, 6, 3, &count) == VN_STATUS_OK);
  CHECK(count == 37);
  vn_distribution_free(d);
  vn_pattern_set_free(ps);

  VnMatrix *m = NULL;
  CHECK(vn_matrix_new("PHI_MOTZKIN", 7, false, &m) == VN_STATUS_OK);
  CHECK(vn_matrix_get(m, 7, 3, &count) == VN_STATUS_OK);
  CHECK(count == 21);
  vn_matrix_free(m);

  int64_t coeffs[6];
  CHECK(vn_column_gf(0, 5, coeffs, 6) == VN_STATUS_OK);
  CHECK(coeffs[5] == 21);

  CHECK(vn_pattern_set_parse("1-1", &ps) == VN_STATUS_PARSE);
  CHECK(strlen(vn_last_error_message()) > 0);
  puts("ok");
  return 0;
}
