#include <stdio.h>
#include <math.h>
#include "../common/npbparams.h"
#include "../common/type.h"

static double u[NZ][NY][NX];
static double v[NZ][NY][NX];
static double r[NZ][NY][NX];
static double a[4] = {-8.0 / 3.0, 0.0, 1.0 / 6.0, 1.0 / 12.0};

static void resid(int n1, int n2, int n3) {
  int i3, i2, i1;
  double u1[NX], u2[NX];

  for (i3 = 1; i3 < n3 - 1; i3++) {
    for (i2 = 1; i2 < n2 - 1; i2++) {
      for (i1 = 0; i1 < n1; i1++) {
        u1[i1] = u[i3][i2 - 1][i1] + u[i3][i2 + 1][i1] + u[i3 - 1][i2][i1] + u[i3 + 1][i2][i1];
        u2[i1] = u[i3 - 1][i2 - 1][i1] + u[i3 - 1][i2 + 1][i1] + u[i3 + 1][i2 - 1][i1] +
                 u[i3 + 1][i2 + 1][i1];
      }
      for (i1 = 1; i1 < n1 - 1; i1++) {
        r[i3][i2][i1] = v[i3][i2][i1] - a[0] * u[i3][i2][i1] -
                        a[2] * (u2[i1] + u1[i1 - 1] + u1[i1 + 1]) -
                        a[3] * (u2[i1 - 1] + u2[i1 + 1]);
      }
    }
  }
}

static double norm2u3(int n1, int n2, int n3, double *rnmu) {
  double s = 0.0, tmp;
  int i3, i2, i1;
  *rnmu = 0.0;
  for (i3 = 1; i3 < n3 - 1; i3++) {
    for (i2 = 1; i2 < n2 - 1; i2++) {
      for (i1 = 1; i1 < n1 - 1; i1++) {
        s = s + r[i3][i2][i1] * r[i3][i2][i1];
        tmp = fabs(r[i3][i2][i1]);
        if (tmp > *rnmu)
          *rnmu = tmp;
      }
    }
  }
  return sqrt(s / ((double)n1 * n2 * n3));
}

static void zero3(int n1, int n2, int n3) {
  int i1, i2, i3;
  for (i3 = 0; i3 < n3; i3++)
    for (i2 = 0; i2 < n2; i2++)
      for (i1 = 0; i1 < n1; i1++)
        u[i3][i2][i1] = 0.0;
}

int main(void) {
  double rnm2, rnmu;
  int it = 0;
  zero3(NX, NY, NZ);
  do {
    resid(NX, NY, NZ);
    it++;
  } while (it < 4);
  rnm2 = norm2u3(NX, NY, NZ, &rnmu);
  printf(" L2 Norm is %20.13E (max %g)\n", rnm2, rnmu);
  return 0;
}
