#pragma once
#define M_PI 3.14159265358979323846
#define HUGE_VAL (1e308 * 10)
double sqrt(double x) __attribute__((const));
double fabs(double x) __attribute__((const));
double pow(double x, double y) __attribute__((const));
double exp(double x) __attribute__((const));
double log(double x) __attribute__((const));
double log10(double x) __attribute__((const));
double sin(double x) __attribute__((const));
double cos(double x) __attribute__((const));
double tan(double x) __attribute__((const));
double atan(double x) __attribute__((const));
double atan2(double y, double x) __attribute__((const));
double floor(double x) __attribute__((const));
double ceil(double x) __attribute__((const));
double fmod(double x, double y) __attribute__((const));
double fmax(double x, double y) __attribute__((const));
double fmin(double x, double y) __attribute__((const));
float sqrtf(float x) __attribute__((const));
float fabsf(float x) __attribute__((const));
