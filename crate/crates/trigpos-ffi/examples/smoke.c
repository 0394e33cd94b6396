/* Proves tan x > x on (0, pi/2) through the C interface. */
#include <stdio.h>

#include "trigpos.h"

int main(void) {
  TrigposGoal *goal = NULL;
  TrigposCertificate *cert = NULL;
  char *report = NULL;
  TrigposStatus s = trigpos_goal_new("tan", "sin(x) - x*cos(x)", "0", "pi/2", &goal);
  if (s != TRIGPOS_STATUS_OK) {
    fprintf(stderr, "goal: %s\n", trigpos_last_error());
    return 2;
  }
  s = trigpos_prove(goal, &cert);
  if (s != TRIGPOS_STATUS_OK) {
    fprintf(stderr, "prove: %s\n", trigpos_last_error());
    trigpos_goal_free(goal);
    return 1;
  }
  s = trigpos_certificate_check(cert, &report);
  printf("%s", report);
  trigpos_string_free(report);
  trigpos_certificate_free(cert);
  trigpos_goal_free(goal);
  return s == TRIGPOS_STATUS_OK ? 0 : 1;
}
