#include <stdio.h>
#include <math.h>
#include <omp.h>
#include "../../SER/common/npbparams.h"
#include "../../SER/common/randdp.h"

#define A 1220703125.0
#define S 271828183.0

static double x[2 * NK];
static double q[NQ];
#pragma omp threadprivate(x)

int main(void) {
  double sx = 0.0, sy = 0.0, gc = 0.0, an;
  int np, k, i;
  int nthreads = 1;

  an = A;
  np = 1 << (M - MK);
  for (i = 0; i < NQ; i++)
    q[i] = 0.0;

#pragma omp parallel default(shared) private(k, i) reduction(+ : sx, sy)
  {
    double t1, t2, t3, t4, x1, x2;
    double qq[NQ];
    int l, kk, ik;
    for (i = 0; i < NQ; i++)
      qq[i] = 0.0;

#pragma omp for schedule(static)
    for (k = 1; k <= np; k++) {
      kk = k - 1;
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
          t3 = x1 * t2;
          t4 = x2 * t2;
          l = fabs(t3) > fabs(t4) ? fabs(t3) : fabs(t4);
          qq[l] += 1.0;
          sx = sx + t3;
          sy = sy + t4;
        }
      }
    }
    for (i = 0; i < NQ; i++) {
#pragma omp atomic
      q[i] += qq[i];
    }
#pragma omp master
    nthreads = omp_get_num_threads();
  }

  for (i = 0; i < NQ; i++)
    gc = gc + q[i];
  printf("EP: threads=%d pairs=%15.0f sums=%25.15e %25.15e\n", nthreads, gc, sx, sy);
  return 0;
}
