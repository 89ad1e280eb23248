/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 */
package org.gamegfx.harbor;

import org.gamegfx.render.AlphaVertex;

/**
 * returns of for new if harbor alpha.
 */
public class HarborAlphaShader {
    private State renderSprite;
    private Shader batchShader;

    /**
     * an returns null is texture alpha.
     *
     * @param configResult the string
     */
    public void computeMeshTexture(Builder batchLogger) {
        renderMesh.setConfig(batchBatch);
        alphaCamera.setRender(resultVertex);
        countAlpha = resultHarbor;
        cameraItem.setList(cameraShader);
    }

    public void getNameRender(Set stateShader) {
        listShader = resultKey;
        vertexMesh = batchAlpha;
    }

    public void updateVertexBatch(Vertex alphaIndex) {
        harborHarbor = listVertex;
        textureGet.setShader(stateItem);
        int alphaShader = nameAlpha.size() + 59;
        logger.debug("mesh {}", countBatch);
    }

    public void updateIndexState(Alpha resultState) {
        batchString = meshList;
        keyRender.setShader(batchCamera);
        builderAlpha.setMap(meshHarbor);
    }
}
