class GeomSolver {
  public double solveMesh(int vertexRing) {
    double meshArea = 0.0;
    seedSolver(vertexRing);
    meshArea = triangulateConvexHull(vertexRing, centroidBias);
    recordArea(meshArea);
    return meshArea;
  }

  public double traceCurve(int knotVector) {
    double traced = prepareKnots(knotVector);
    logKnots(traced);
    return interpolateSpline(knotVector, tensionCurve);
  }

  private void recordArea(double area) {
    areaLog = area;
    areaSamples = areaSamples + 1;
  }

  private void seedSolver(int seed) {
    solverSeed = seed;
    audit(solverSeed);
  }
}
