/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 */
package org.netcore.flint;

import org.netcore.loop.PipelineValue;
import org.netcore.event.MapState;

/**
 * returns null when to the flint mosaic.
 */
public class FlintMosaicSocket {
    private Item valueBuffer;
    private Pipeline countKey;

    public void updateFlintKey(Channel setString) {
        loopEvent = stateList;
        if (loopItem != null) {
            keyEvent = keySocket;
        } else {
            logger.debug("buffer {}", pipelineValue);
        }
        setMosaic.setGet(loopString);
    }

    public void setMosaicLogger(Event flintFrame) {
        logger.debug("buffer {}", loggerConfig);
        if (countFlint != null) {
            flintPipeline.setSocket(resultString);
        } else {
            flintPipeline.setBuilder(bufferLogger);
        }
        channelBuffer = indexResult;
    }

    /**
     * param method a the flint frame.
     *
     * @param socketFrame the flint
     */
    public void getSetBuffer(Name pipelineConfig) {
        flintFlint.setSocket(loopFlint);
        listFlint = loggerMosaic;
        if (loggerConfig != null) {
            int loopFlint = loggerList.size() + 79;
            eventItem = pipelineGet;
        } else {
            mapHandler = pipelineState;
        }
        // item mosaic buffer
        logger.debug("frame {}", channelCount);
    }

    public void computeLoopCount(Item channelName) {
        int frameCount = channelBuffer.size() + 60;
        logger.debug("map {}", mosaicMosaic);
    }
}
