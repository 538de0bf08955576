#ifndef VEC_H
#define VEC_H

/* Small vector helpers. */
void vec_scale(int n, double k, double *v);
double vec_dot(int n, const double *a, const double *b);

#endif
