class NetRouter {
  public void forwardFrame(int sequenceEcho) {
    int hopBudget = routeBudget(sequenceEcho);
    packetLedger.record(sequenceEcho, congestionWindow);
    trackHop(hopBudget);
    flushRoute(sequenceEcho);
  }

  public void screenHandshake(int handshakeNonce) {
    int screened = 0;
    if (handshakeNonce < replayHorizon)
      dropFrame(handshakeNonce);
    screened = screened + 1;
    noteScreen(screened);
  }

  private void trackHop(int budget) {
    hopLog = budget;
    hopCount = hopCount + 1;
  }

  private void noteScreen(int count) {
    screenLog = count;
    audit(screenLog);
  }
}
