#ifndef TYPE_H
#define TYPE_H

typedef enum { false, true } logical;
typedef struct {
  double real;
  double imag;
} dcomplex;

#define min(x, y) ((x) < (y) ? (x) : (y))
#define max(x, y) ((x) > (y) ? (x) : (y))

#endif
