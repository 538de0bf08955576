#include <stdio.h>
#include <stdlib.h>
#include <math.h>
#include "../common/npbparams.h"
#include "../common/randdp.h"
#include "../common/timers.h"

#define NZ_MAX (NA * (NONZER + 1) * (NONZER + 1))

static int colidx[NZ_MAX];
static int rowstr[NA + 1];
static double a[NZ_MAX];
static double x[NA + 2];
static double z[NA + 2];
static double p[NA + 2];
static double q[NA + 2];
static double r[NA + 2];

static int naa, firstrow, lastrow, firstcol, lastcol;

static void conj_grad(int colidx[], int rowstr[], double x[], double z[], double a[],
                      double p[], double q[], double r[], double *rnorm);
static int icnvrt(double x, int ipwr2);

int main(void) {
  int i, j, k, it;
  double zeta;
  double rnorm;
  double norm_temp1, norm_temp2;
  double t;

  firstrow = 0;
  lastrow = NA - 1;
  firstcol = 0;
  lastcol = NA - 1;
  naa = NA;

  for (j = 0; j < lastrow - firstrow + 1; j++) {
    for (k = rowstr[j]; k < rowstr[j + 1]; k++) {
      colidx[k] = colidx[k] - firstcol;
    }
  }

  for (i = 0; i < NA + 1; i++) {
    x[i] = 1.0;
  }
  for (j = 0; j < lastcol - firstcol + 1; j++) {
    q[j] = 0.0;
    z[j] = 0.0;
    r[j] = 0.0;
    p[j] = 0.0;
  }

  zeta = 0.0;
  timer_clear(1);
  timer_start(1);
  for (it = 1; it <= NITER; it++) {
    conj_grad(colidx, rowstr, x, z, a, p, q, r, &rnorm);

    norm_temp1 = 0.0;
    norm_temp2 = 0.0;
    for (j = 0; j < lastcol - firstcol + 1; j++) {
      norm_temp1 = norm_temp1 + x[j] * z[j];
      norm_temp2 = norm_temp2 + z[j] * z[j];
    }
    norm_temp2 = 1.0 / sqrt(norm_temp2);
    zeta = SHIFT + 1.0 / norm_temp1;
    if (it == 1)
      printf("\n   iteration           ||r||                 zeta\n");
    printf("    %5d       %20.14E%20.13f\n", it, rnorm, zeta);

    for (j = 0; j < lastcol - firstcol + 1; j++) {
      x[j] = norm_temp2 * z[j];
    }
  }
  timer_stop(1);
  t = timer_read(1);
  printf(" Benchmark completed in %f s, check %d\n", t, icnvrt(zeta, 1024));
  return 0;
}

static void conj_grad(int colidx[], int rowstr[], double x[], double z[], double a[],
                      double p[], double q[], double r[], double *rnorm) {
  int j, k;
  int cgit, cgitmax = 25;
  double d, sum, rho, rho0, alpha, beta;

  rho = 0.0;
  for (j = 0; j < naa + 1; j++) {
    q[j] = 0.0;
    z[j] = 0.0;
    r[j] = x[j];
    p[j] = r[j];
  }
  for (j = 0; j < lastcol - firstcol + 1; j++) {
    rho = rho + r[j] * r[j];
  }

  for (cgit = 1; cgit <= cgitmax; cgit++) {
    for (j = 0; j < lastrow - firstrow + 1; j++) {
      sum = 0.0;
      for (k = rowstr[j]; k < rowstr[j + 1]; k++) {
        sum = sum + a[k] * p[colidx[k]];
      }
      q[j] = sum;
    }
    d = 0.0;
    for (j = 0; j < lastcol - firstcol + 1; j++) {
      d = d + p[j] * q[j];
    }
    alpha = rho / d;
    rho0 = rho;
    rho = 0.0;
    for (j = 0; j < lastcol - firstcol + 1; j++) {
      z[j] = z[j] + alpha * p[j];
      r[j] = r[j] - alpha * q[j];
    }
    for (j = 0; j < lastcol - firstcol + 1; j++) {
      rho = rho + r[j] * r[j];
    }
    beta = rho / rho0;
    for (j = 0; j < lastcol - firstcol + 1; j++) {
      p[j] = r[j] + beta * p[j];
    }
  }

  sum = 0.0;
  for (j = 0; j < lastrow - firstrow + 1; j++) {
    d = 0.0;
    for (k = rowstr[j]; k < rowstr[j + 1]; k++) {
      d = d + a[k] * z[colidx[k]];
    }
    r[j] = d;
  }
  for (j = 0; j < lastcol - firstcol + 1; j++) {
    d = x[j] - r[j];
    sum = sum + d * d;
  }
  *rnorm = sqrt(sum);
}

static int icnvrt(double x, int ipwr2) { return (int)(ipwr2 * x); }
