#include <stdio.h>
#include <stdlib.h>
#include <math.h>
#include "../common/type.h"
#include "../common/npbparams.h"
#include "../common/randdp.h"
#include "../common/timers.h"

#define EPSILON 1.0e-8
#define A 1220703125.0
#define S 271828183.0

static double x[2 * NK];
static double q[NQ];

int main(void) {
  double Mops, t1, t2, t3, t4, x1, x2;
  double sx, sy, tm, an, tt, gc;
  double sx_verify_value, sy_verify_value, sx_err, sy_err;
  int np;
  int i, ik, kk, l, k, nit;
  int k_offset, j;
  logical verified;
  double dum[3] = {1.0, 1.0, 1.0};

  timer_clear(0);
  vranlc(0, &dum[0], dum[1], &dum[2]);
  dum[0] = randlc(&dum[1], dum[2]);
  for (i = 0; i < 2 * NK; i++) {
    x[i] = -1.0e99;
  }
  Mops = log(sqrt(fabs(max(1.0, 1.0))));

  timer_start(0);
  t1 = A;
  vranlc(0, &t1, A, x);
  t1 = A;
  for (i = 0; i < MK + 1; i++) {
    t2 = randlc(&t1, t1);
  }
  an = t1;
  tt = S;
  gc = 0.0;
  sx = 0.0;
  sy = 0.0;
  for (i = 0; i < NQ; i++) {
    q[i] = 0.0;
  }
  np = 1 << (M - MK);
  k_offset = -1;

  for (k = 1; k <= np; k++) {
    kk = k_offset + k;
    t1 = S;
    t2 = an;
    for (i = 1; i <= 100; i++) {
      ik = kk / 2;
      if ((2 * ik) != kk)
        t3 = randlc(&t1, t2);
      if (ik == 0)
        break;
      t3 = randlc(&t2, t2);
      kk = ik;
    }
    vranlc(2 * NK, &t1, A, x);
    for (i = 0; i < NK; i++) {
      x1 = 2.0 * x[2 * i] - 1.0;
      x2 = 2.0 * x[2 * i + 1] - 1.0;
      t1 = x1 * x1 + x2 * x2;
      if (t1 <= 1.0) {
        t2 = sqrt(-2.0 * log(t1) / t1);
        t3 = (x1 * t2);
        t4 = (x2 * t2);
        l = max(fabs(t3), fabs(t4));
        q[l] = q[l] + 1.0;
        sx = sx + t3;
        sy = sy + t4;
      }
    }
  }
  for (i = 0; i < NQ; i++) {
    gc = gc + q[i];
  }
  timer_stop(0);
  tm = timer_read(0);

  nit = 0;
  verified = true;
  sx_verify_value = -3.247834652034740e+3;
  sy_verify_value = -6.958407078382297e+3;
  sx_err = fabs((sx - sx_verify_value) / sx_verify_value);
  sy_err = fabs((sy - sy_verify_value) / sy_verify_value);
  verified = ((sx_err <= EPSILON) && (sy_err <= EPSILON));
  Mops = pow(2.0, M + 1) / tm / 1000000.0;

  printf("EP Benchmark Results:\n");
  printf("CPU Time =%10.4f\n", tm);
  printf("N = 2^%5d\n", M);
  printf("No. Gaussian Pairs = %15.0f\n", gc);
  printf("Sums = %25.15e %25.15e\n", sx, sy);
  printf("Counts: \n");
  for (i = 0; i < NQ; i++) {
    printf("%3d%15.0f\n", i, q[i]);
  }
  j = verified ? 0 : 1;
  (void)nit;
  (void)Mops;
  return j;
}
