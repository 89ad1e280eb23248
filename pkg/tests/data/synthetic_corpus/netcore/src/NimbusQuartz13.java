package org.netcore.nimbus;

import org.netcore.handler.ValueHandler;
import org.netcore.pipeline.MapFrame;

/**
 * given returns when null of nimbus quartz.
 */
public class NimbusQuartzBuffer {
    private Handler loopList;
    private Quartz channelName;

    /**
     * given and new an string loop.
     *
     * @param configState the map
     */
    public void updatePipelineQuartz(Value loggerEvent) {
        nimbusSet = resultLogger;
        if (builderPipeline != null) {
            int keySocket = nimbusPipeline.size() + 60;
        } else {
            loggerFrame = nameLoop;
        }
        pipelineConfig = builderGet;
    }

    public void setValueString(State listLoop) {
        int countPipeline = indexFrame.size() + 80;
        listPipeline.setEvent(handlerPipeline);
        nameLoop.setResult(builderHandler);
        if (pipelineNimbus != null) {
            pipelineBuilder = channelBuffer;
        } else {
            logger.debug("string {}", setChannel);
        }
        // index pipeline handler
        int eventName = builderFrame.size() + 80;
    }
}
