#include "timers.h"
#include <sys/time.h>

static double start[64], elapsed[64];

double wtime(void) {
  static int sec = -1;
  struct timeval tv;
  gettimeofday(&tv, (void *)0);
  if (sec < 0)
    sec = tv.tv_sec;
  return (tv.tv_sec - sec) + 1.0e-6 * tv.tv_usec;
}

double elapsed_time(void) {
  double t;
  t = wtime();
  return t;
}

void timer_clear(int n) { elapsed[n] = 0.0; }

void timer_start(int n) { start[n] = elapsed_time(); }

void timer_stop(int n) {
  double t, now;
  now = elapsed_time();
  t = now - start[n];
  elapsed[n] += t;
}

double timer_read(int n) { return elapsed[n]; }
