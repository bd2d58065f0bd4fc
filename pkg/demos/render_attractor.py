"""Render the skew-product attractor for a few (beta, lambda) pairs.

Samples long orbits of the baker-like map and writes PGM rasters next
to this script.  The x-fibers contract by lambda while the y-coordinate
runs the beta-map, so lambda*beta < 1 gives visibly fractal slices.
"""

import pathlib

from betabaker import raster_to_pgm, rasterize, srb_sample

HERE = pathlib.Path(__file__).parent


def main():
    for beta, lam in [(1.558980, 0.5), (1.801938, 0.45), (1.2, 0.8)]:
        cloud = srb_sample(beta, lam, seed=0, count=400_000)
        raster = rasterize(cloud, 512, 512)
        path = HERE / f"attractor_b{beta:.3f}_l{lam:.2f}.pgm"
        path.write_bytes(raster_to_pgm(raster))
        print(f"wrote {path.name}: {len(cloud)} points, "
              f"{(raster.counts > 0).sum()} occupied pixels")


if __name__ == "__main__":
    main()
