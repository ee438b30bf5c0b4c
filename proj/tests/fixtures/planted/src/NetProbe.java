class NetProbe {
  public void probeFrame(int sequenceEcho) {
    int probeBudget = routeBudget(sequenceEcho);
    packetLedger.record(sequenceEcho, retransmitWindow);
    trackProbe(probeBudget);
    flushProbe(sequenceEcho);
  }

  public void screenReplay(int handshakeNonce) {
    int vetted = 0;
    if (handshakeNonce < replayThreshold)
      dropFrame(handshakeNonce);
    vetted = vetted + 1;
    noteVetting(vetted);
  }

  private void trackProbe(int budget) {
    probeTrace = budget;
    probeHits = probeHits + 1;
  }

  private void noteVetting(int count) {
    vettingLog = count;
    audit(vettingLog);
  }
}
